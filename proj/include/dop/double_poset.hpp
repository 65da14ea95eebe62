#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "poset.hpp"
#include "rational.hpp"

namespace dop {

enum class Sign : int { plus = +1, minus = -1 };

inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline int sign_value(Sign s) { return static_cast<int>(s); }
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

// Two strict orders on one ground set. No compatibility is assumed.
struct DoublePoset {
  Poset plus, minus;

  DoublePoset(Poset p, Poset m) : plus(std::move(p)), minus(std::move(m)) {
    if (plus.size() != minus.size())
      throw std::invalid_argument("orders live on different ground sets");
  }
  int size() const { return plus.size(); }
  const Poset& order(Sign s) const { return s == Sign::plus ? plus : minus; }
  DoublePoset swapped() const { return DoublePoset(minus, plus); }
  DoublePoset opposite() const {
    return DoublePoset(plus.opposite(), minus.opposite());
  }
  bool operator==(const DoublePoset& o) const {
    return plus == o.plus && minus == o.minus;
  }
};

// Virtual endpoints adjoined below and above every element.
constexpr int kBot = -1;
constexpr int kTop = -2;

inline bool hat_less(const Poset& p, int x, int y) {
  if (x == y) return false;
  if (x == kTop || y == kBot) return false;
  if (x == kBot || y == kTop) return true;
  return p.less(x, y);
}

inline bool hat_leq(const Poset& p, int x, int y) {
  return x == y || hat_less(p, x, y);
}

inline bool hat_less(const DoublePoset& d, Sign s, int x, int y) {
  return hat_less(d.order(s), x, y);
}

inline bool hat_leq(const DoublePoset& d, Sign s, int x, int y) {
  return x == y || hat_less(d, s, x, y);
}

/*
 * An alternating chain bot = p_0 < p_1 < ... < p_k = top whose segment
 * orders alternate starting with start_sign; only the interior nodes are
 * stored. An alternating cycle p_0 < p_1 < ... < p_{2m-1} < p_0 likewise
 * alternates, has even length, and is kept in the canonical rotation that
 * places the smallest node id first.
 */
struct AlternatingChain {
  std::vector<int> nodes;  // interior, distinct; nonempty for proper chains
  Sign start_sign;

  int segments() const { return static_cast<int>(nodes.size()) + 1; }
  Sign segment_sign(int i) const { return i % 2 == 0 ? start_sign : flip(start_sign); }
  Sign sign() const { return segment_sign(segments() - 1); }
  // Walk node at position i, 0 <= i <= segments().
  int node_at(int i) const {
    if (i == 0) return kBot;
    if (i == segments()) return kTop;
    return nodes[i - 1];
  }
  bool operator==(const AlternatingChain& o) const {
    return nodes == o.nodes && start_sign == o.start_sign;
  }
};

struct AlternatingCycle {
  std::vector<int> nodes;  // distinct, even count >= 2
  Sign start_sign;

  int length() const { return static_cast<int>(nodes.size()); }
  Sign segment_sign(int i) const { return i % 2 == 0 ? start_sign : flip(start_sign); }

  void canonicalize() {
    int idx = static_cast<int>(
        std::min_element(nodes.begin(), nodes.end()) - nodes.begin());
    std::rotate(nodes.begin(), nodes.begin() + idx, nodes.end());
    start_sign = idx % 2 == 0 ? start_sign : flip(start_sign);
  }
  bool operator==(const AlternatingCycle& o) const {
    return nodes == o.nodes && start_sign == o.start_sign;
  }
};

inline bool chain_less(const AlternatingChain& a, const AlternatingChain& b) {
  if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
  if (a.nodes != b.nodes) return a.nodes < b.nodes;
  return a.start_sign == Sign::plus && b.start_sign == Sign::minus;
}

inline bool cycle_less(const AlternatingCycle& a, const AlternatingCycle& b) {
  if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
  if (a.nodes != b.nodes) return a.nodes < b.nodes;
  return a.start_sign == Sign::plus && b.start_sign == Sign::minus;
}

inline bool distinct_nodes(const std::vector<int>& v) {
  std::vector<int> s = v;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

// Full re-validation: segment relations, distinctness, properness, and the
// odd-length exclusion (an odd chain whose outer nodes close up in the
// start order would share its functional with an alternating cycle).
inline bool chain_is_valid(const DoublePoset& d, const AlternatingChain& c) {
  const int n = d.size();
  if (c.nodes.empty()) return false;
  for (int p : c.nodes)
    if (p < 0 || p >= n) return false;
  if (!distinct_nodes(c.nodes)) return false;
  for (int i = 1; i + 1 < c.segments(); ++i)
    if (!d.order(c.segment_sign(i)).less(c.node_at(i), c.node_at(i + 1)))
      return false;
  if (c.segments() % 2 == 1 &&
      d.order(c.start_sign).less(c.nodes.back(), c.nodes.front()))
    return false;
  return true;
}

inline bool cycle_is_valid(const DoublePoset& d, const AlternatingCycle& c) {
  const int n = d.size();
  const int len = c.length();
  if (len < 2 || len % 2 != 0) return false;
  for (int p : c.nodes)
    if (p < 0 || p >= n) return false;
  if (!distinct_nodes(c.nodes)) return false;
  for (int i = 0; i < len; ++i)
    if (!d.order(c.segment_sign(i)).less(c.nodes[i], c.nodes[(i + 1) % len]))
      return false;
  return true;
}

inline std::vector<AlternatingChain> enumerate_chains(const DoublePoset& d) {
  const int n = d.size();
  std::vector<AlternatingChain> out;
  std::vector<int> path;
  std::vector<bool> used(n, false);
  for (Sign sigma : {Sign::plus, Sign::minus}) {
    auto dfs = [&](auto&& self) -> void {
      const int k = static_cast<int>(path.size()) + 1;
      bool odd_ok = k % 2 == 0 ||
                    !d.order(sigma).less(path.back(), path.front());
      if (odd_ok) out.push_back({path, sigma});
      // the segment leaving position m carries sigma * (-1)^m
      Sign next = path.size() % 2 == 0 ? sigma : flip(sigma);
      for (int q = 0; q < n; ++q) {
        if (used[q] || !d.order(next).less(path.back(), q)) continue;
        used[q] = true;
        path.push_back(q);
        self(self);
        path.pop_back();
        used[q] = false;
      }
    };
    for (int p = 0; p < n; ++p) {
      used[p] = true;
      path.push_back(p);
      dfs(dfs);
      path.pop_back();
      used[p] = false;
    }
  }
  std::sort(out.begin(), out.end(), chain_less);
  return out;
}

// Each cycle is found exactly once: in its canonical rotation the smallest
// node comes first, so the search roots at a node smaller than all others.
inline std::vector<AlternatingCycle> enumerate_cycles(const DoublePoset& d) {
  const int n = d.size();
  std::vector<AlternatingCycle> out;
  std::vector<int> path;
  std::vector<bool> used(n, false);
  for (Sign sigma : {Sign::plus, Sign::minus}) {
    auto dfs = [&](auto&& self) -> void {
      const int m = static_cast<int>(path.size()) - 1;
      Sign closing = m % 2 == 0 ? sigma : flip(sigma);
      if (m % 2 == 1 && d.order(closing).less(path.back(), path.front()))
        out.push_back({path, sigma});
      Sign next = closing;
      for (int q = path.front() + 1; q < n; ++q) {
        if (used[q] || !d.order(next).less(path.back(), q)) continue;
        used[q] = true;
        path.push_back(q);
        self(self);
        path.pop_back();
        used[q] = false;
      }
    };
    for (int p = 0; p < n; ++p) {
      used[p] = true;
      path.push_back(p);
      dfs(dfs);
      path.pop_back();
      used[p] = false;
    }
  }
  std::sort(out.begin(), out.end(), cycle_less);
  return out;
}

// l_C(f) = sigma(-f(p_1) + f(p_2) - ...), paired with sign(C), the sign of
// the last segment.
inline std::pair<Vec, Sign> chain_functional(const DoublePoset& d,
                                             const AlternatingChain& c) {
  Vec l(d.size(), 0);
  for (int i = 1; i < c.segments(); ++i)
    l[c.nodes[i - 1]] = sign_value(c.start_sign) * (i % 2 == 0 ? 1 : -1);
  return {std::move(l), c.sign()};
}

inline Vec cycle_functional(const DoublePoset& d, const AlternatingCycle& c) {
  Vec l(d.size(), 0);
  for (int i = 0; i < c.length(); ++i)
    l[c.nodes[i]] = sign_value(c.start_sign) * (i % 2 == 0 ? 1 : -1);
  return l;
}

struct Segment {
  int from, to;
  Sign sign;
};

inline std::vector<Segment> segments_of(const AlternatingChain& c) {
  std::vector<Segment> s;
  for (int i = 0; i < c.segments(); ++i)
    s.push_back({c.node_at(i), c.node_at(i + 1), c.segment_sign(i)});
  return s;
}

inline std::vector<Segment> segments_of(const AlternatingCycle& c) {
  std::vector<Segment> s;
  for (int i = 0; i < c.length(); ++i)
    s.push_back({c.nodes[i], c.nodes[(i + 1) % c.length()], c.segment_sign(i)});
  return s;
}

// a sits in the half-open interval [from, to) of the segment's own order.
// Virtual endpoints participate vacuously: bot <= a and a < top always hold.
struct CrossingWitness {
  int element;
  int seg_i, seg_j;  // distinct segment indices
  Sign tau, sigma;   // the walk's segment signs at seg_i and seg_j
};

namespace detail {

inline bool covers_element(const DoublePoset& d, const Segment& s, int a) {
  return hat_leq(d, s.sign, s.from, a) && hat_less(d, s.sign, a, s.to);
}

inline std::optional<CrossingWitness> find_witness(
    const DoublePoset& d, const std::vector<Segment>& segs) {
  const int m = static_cast<int>(segs.size());
  for (int a = 0; a < d.size(); ++a)
    for (int i = 0; i < m; ++i) {
      if (!covers_element(d, segs[i], a)) continue;
      for (int j = i + 1; j < m; ++j)
        if (covers_element(d, segs[j], a))
          return CrossingWitness{a, i, j, segs[i].sign, segs[j].sign};
    }
  return std::nullopt;
}

inline std::vector<CrossingWitness> find_all_witnesses(
    const DoublePoset& d, const std::vector<Segment>& segs) {
  std::vector<CrossingWitness> out;
  const int m = static_cast<int>(segs.size());
  for (int a = 0; a < d.size(); ++a)
    for (int i = 0; i < m; ++i) {
      if (!covers_element(d, segs[i], a)) continue;
      for (int j = i + 1; j < m; ++j)
        if (covers_element(d, segs[j], a))
          out.push_back({a, i, j, segs[i].sign, segs[j].sign});
    }
  return out;
}

inline void check_witness(const DoublePoset& d, const std::vector<Segment>& segs,
                          const CrossingWitness& w) {
  const int m = static_cast<int>(segs.size());
  if (w.seg_i < 0 || w.seg_i >= m || w.seg_j < 0 || w.seg_j >= m ||
      w.seg_i == w.seg_j || w.element < 0 || w.element >= d.size())
    throw InvalidWitness("witness indices out of range");
  if (segs[w.seg_i].sign != w.tau || segs[w.seg_j].sign != w.sigma)
    throw InvalidWitness("witness signs disagree with the walk");
  if (!covers_element(d, segs[w.seg_i], w.element) ||
      !covers_element(d, segs[w.seg_j], w.element))
    throw InvalidWitness("element is not astride both segments");
}

}  // namespace detail

inline std::optional<CrossingWitness> crossing_witness(
    const DoublePoset& d, const AlternatingChain& c) {
  return detail::find_witness(d, segments_of(c));
}

inline std::optional<CrossingWitness> crossing_witness(
    const DoublePoset& d, const AlternatingCycle& c) {
  return detail::find_witness(d, segments_of(c));
}

inline std::vector<CrossingWitness> all_crossing_witnesses(
    const DoublePoset& d, const AlternatingChain& c) {
  return detail::find_all_witnesses(d, segments_of(c));
}

inline std::vector<CrossingWitness> all_crossing_witnesses(
    const DoublePoset& d, const AlternatingCycle& c) {
  return detail::find_all_witnesses(d, segments_of(c));
}

/*
 * Splitting a crossed walk along a witness (a, i, j).
 *
 * When the two segment signs agree the crossing element only certifies the
 * transitive jumps p_i < p_{j+1} and p_j < p_{i+1}, and both pieces reuse
 * original nodes. When they differ, a itself joins the pieces. If a already
 * lies on the walk away from i and j, the witness is first re-paired with
 * a's own outgoing segment, whose half-open condition holds trivially; this
 * keeps the pieces free of repeated nodes. The functional identity
 * l_W = l_W1 + l_W2 holds coefficientwise in every case because each kept
 * node keeps its coefficient and an inserted a receives opposite signs in
 * the two pieces.
 */
inline std::pair<AlternatingCycle, AlternatingCycle> split(
    const DoublePoset& d, const AlternatingCycle& c, const CrossingWitness& w) {
  const auto segs = segments_of(c);
  detail::check_witness(d, segs, w);
  const int len = c.length();
  const int a = w.element;
  int i = w.seg_i, j = w.seg_j;

  auto node = [&](int t) { return c.nodes[((t % len) + len) % len]; };
  auto seg_sign = [&](int t) { return c.segment_sign(((t % len) + len) % len); };
  // positions x, x+1, ..., y cyclically, inclusive
  auto stretch = [&](int x, int y) {
    std::vector<int> v;
    for (int t = x;; ++t) {
      v.push_back(node(t));
      if (((t % len) + len) % len == ((y % len) + len) % len) break;
    }
    return v;
  };

  if (seg_sign(i) != seg_sign(j)) {
    int m = -1;
    for (int t = 0; t < len; ++t)
      if (c.nodes[t] == a) m = t;
    if (m == j) std::swap(i, j);
    else if (m >= 0 && m != i) { j = i; i = m; }
  }
  const Sign tau = seg_sign(i), sigma = seg_sign(j);

  AlternatingCycle c1, c2;
  if (tau == sigma) {
    c1 = {stretch(j + 1, i), seg_sign(j + 1)};
    c2 = {stretch(i + 1, j), seg_sign(i + 1)};
  } else if (node(i) == a) {
    c1 = {stretch(j + 1, i - 1), seg_sign(j + 1)};
    c2 = {stretch(i, j), seg_sign(i)};
  } else {
    std::vector<int> n1{a}, n2{a};
    for (int t : stretch(j + 1, i)) n1.push_back(t);
    for (int t : stretch(i + 1, j)) n2.push_back(t);
    c1 = {std::move(n1), sigma};
    c2 = {std::move(n2), tau};
  }
  c1.canonicalize();
  c2.canonicalize();
  if (!cycle_is_valid(d, c1) || !cycle_is_valid(d, c2))
    throw std::logic_error("split produced an invalid cycle");
  return {std::move(c1), std::move(c2)};
}

/*
 * First piece of a chain split. The re-routed outer walk normally stays a
 * chain, but when it has an odd segment count and its outer nodes close up
 * in the start order it is excluded as a chain; the closed-up cycle carries
 * the identical functional, so the split degenerates to (cycle, cycle).
 * Exactly in that corner l_C is a sum of two cycle functionals, which also
 * caps max l_C over D(P) at 0, so such chains never support facets.
 */
struct ChainSplit {
  std::variant<AlternatingChain, AlternatingCycle> first;
  AlternatingCycle second;

  bool degenerate() const {
    return std::holds_alternative<AlternatingCycle>(first);
  }
};

inline ChainSplit split(
    const DoublePoset& d, const AlternatingChain& c, const CrossingWitness& w) {
  const auto segs = segments_of(c);
  detail::check_witness(d, segs, w);
  const int k = c.segments();
  const int a = w.element;
  int i = std::min(w.seg_i, w.seg_j), j = std::max(w.seg_i, w.seg_j);

  auto seg_sign = [&](int t) { return c.segment_sign(t); };
  // interior positions x..y inclusive, clamped to [1, k-1]
  auto interior = [&](int x, int y) {
    std::vector<int> v;
    for (int t = std::max(x, 1); t <= std::min(y, k - 1); ++t)
      v.push_back(c.node_at(t));
    return v;
  };

  if (seg_sign(i) != seg_sign(j)) {
    int m = -1;
    for (int t = 1; t <= k - 1; ++t)
      if (c.node_at(t) == a) m = t;
    if (m >= 0 && m != i && m != j) {
      int x = i;
      i = std::min(m, x);
      j = std::max(m, x);
    }
  }
  const Sign tau = seg_sign(i), sigma = seg_sign(j);

  AlternatingChain c1;
  AlternatingCycle c2;
  c1.start_sign = c.start_sign;
  if (tau == sigma) {
    c1.nodes = interior(1, i);
    for (int t : interior(j + 1, k - 1)) c1.nodes.push_back(t);
    c2 = {interior(i + 1, j), seg_sign(i + 1)};
  } else if (c.node_at(i) == a) {
    c1.nodes = interior(1, i - 1);
    for (int t : interior(j + 1, k - 1)) c1.nodes.push_back(t);
    c2 = {interior(i, j), seg_sign(i)};
  } else if (c.node_at(j) == a) {
    c1.nodes = interior(1, i);
    for (int t : interior(j, k - 1)) c1.nodes.push_back(t);
    c2 = {interior(i + 1, j - 1), seg_sign(i + 1)};
  } else {
    c1.nodes = interior(1, i);
    c1.nodes.push_back(a);
    for (int t : interior(j + 1, k - 1)) c1.nodes.push_back(t);
    std::vector<int> n2{a};
    for (int t : interior(i + 1, j)) n2.push_back(t);
    c2 = {std::move(n2), tau};
  }
  c2.canonicalize();
  if (!cycle_is_valid(d, c2))
    throw std::logic_error("split produced an invalid walk");
  if (chain_is_valid(d, c1)) return {std::move(c1), std::move(c2)};
  AlternatingCycle closed{c1.nodes, flip(c1.start_sign)};
  closed.canonicalize();
  if (!cycle_is_valid(d, closed))
    throw std::logic_error("split produced an invalid walk");
  return {std::move(closed), std::move(c2)};
}

// Greedy peel of common maxima. It succeeds exactly when the two orders
// admit a common linear extension; returned ranks are 1..n.
inline std::optional<std::vector<int>> common_linear_extension(
    const DoublePoset& d) {
  const int n = d.size();
  std::vector<int> ranks(n, 0);
  Subset remaining = n == kMaxElements ? ~Subset{0} : bit(n) - 1;
  for (int next = n; next >= 1; --next) {
    int pick = -1;
    Subset m = remaining;
    while (m) {
      int p = __builtin_ctzll(m);
      m &= m - 1;
      if ((d.plus.above(p) & remaining) == 0 &&
          (d.minus.above(p) & remaining) == 0) {
        pick = p;
        break;
      }
    }
    if (pick < 0) return std::nullopt;
    ranks[pick] = next;
    remaining &= ~bit(pick);
  }
  return ranks;
}

inline bool is_compatible(const DoublePoset& d) {
  return common_linear_extension(d).has_value();
}

}  // namespace dop
