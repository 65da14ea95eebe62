#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace dop {

// Exact rational scalar. mpq_class keeps num/den coprime with den > 0 after
// every operation, which is exactly the canonical-form invariant we need.
using Rat = mpq_class;
using Vec = std::vector<Rat>;

inline Rat dot(const Vec& a, const Vec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero_vec(const Vec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

// Scales v by the positive rational that makes all entries coprime integers.
// Scaling is positive, so inequality directions are preserved.
inline void scale_primitive(Vec& v) {
  mpz_class l = 1;
  for (const Rat& x : v) l = lcm(l, x.get_den());
  mpz_class g = 0;
  for (Rat& x : v) {
    x *= l;
    x.canonicalize();
    g = gcd(g, x.get_num());
  }
  if (g == 0) return;
  for (Rat& x : v) {
    x /= g;
    x.canonicalize();
  }
}

// Canonical form for an equality a.x = b, where the overall sign carries no
// meaning: primitive integers with the first nonzero entry positive.
inline void scale_primitive_signed(Vec& v) {
  scale_primitive(v);
  for (const Rat& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Rat& y : v) y = -y;
    break;
  }
}

inline bool vec_less(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

struct VecLess {
  bool operator()(const Vec& a, const Vec& b) const { return vec_less(a, b); }
};

inline std::string to_string(const Rat& x) { return x.get_str(); }

inline std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace dop
