#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace dop {

// Subsets of the ground set as bitmasks; bit i is element i.
using Subset = std::uint64_t;

constexpr int kMaxElements = 60;

inline Subset bit(int i) { return Subset{1} << i; }

struct Element {
  int id;
  std::string label;
};

// Finite strict partial order on {0, ..., n-1}, stored as a transitively
// closed less-than bitmatrix.
class Poset {
 public:
  explicit Poset(int n) : n_(n), up_(n, 0), down_(n, 0) {
    if (n < 0 || n > kMaxElements) throw GuardExceeded("poset size out of range");
  }

  // Builds from arbitrary strict relations, closing transitively.
  // Throws CycleError if the closure would force p < p.
  static Poset from_relations(int n, const std::vector<std::pair<int, int>>& rel) {
    Poset p(n);
    for (auto [a, b] : rel) {
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw std::out_of_range("relation element out of range");
      p.up_[a] |= bit(b);
    }
    // Repeated squaring of the reachability masks closes the relation.
    for (bool changed = true; changed;) {
      changed = false;
      for (int a = 0; a < n; ++a) {
        Subset acc = p.up_[a];
        Subset frontier = acc;
        while (frontier) {
          int b = __builtin_ctzll(frontier);
          frontier &= frontier - 1;
          acc |= p.up_[b];
        }
        if (acc != p.up_[a]) {
          p.up_[a] = acc;
          changed = true;
        }
      }
    }
    for (int a = 0; a < n; ++a)
      if (p.up_[a] & bit(a)) throw CycleError("relation closure contains a cycle");
    for (int a = 0; a < n; ++a) {
      Subset m = p.up_[a];
      while (m) {
        int b = __builtin_ctzll(m);
        m &= m - 1;
        p.down_[b] |= bit(a);
      }
    }
    return p;
  }

  int size() const { return n_; }
  bool less(int a, int b) const { return up_[a] & bit(b); }
  bool leq(int a, int b) const { return a == b || less(a, b); }
  bool comparable(int a, int b) const { return less(a, b) || less(b, a); }
  Subset above(int a) const { return up_[a]; }
  Subset below(int a) const { return down_[a]; }

  std::vector<std::pair<int, int>> covers() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a) {
      Subset m = up_[a];
      while (m) {
        int b = __builtin_ctzll(m);
        m &= m - 1;
        if (!(up_[a] & down_[b])) out.emplace_back(a, b);
      }
    }
    return out;
  }

  Subset minimal_elements() const {
    Subset s = 0;
    for (int a = 0; a < n_; ++a)
      if (down_[a] == 0) s |= bit(a);
    return s;
  }

  Subset maximal_elements() const {
    Subset s = 0;
    for (int a = 0; a < n_; ++a)
      if (up_[a] == 0) s |= bit(a);
    return s;
  }

  Poset opposite() const {
    Poset p(n_);
    p.up_ = down_;
    p.down_ = up_;
    return p;
  }

  // A linear extension: ids ordered so relations point forward.
  std::vector<int> linear_extension() const {
    std::vector<int> order;
    std::vector<int> indeg(n_);
    for (int a = 0; a < n_; ++a) indeg[a] = __builtin_popcountll(down_[a]);
    std::priority_queue<int, std::vector<int>, std::greater<int>> q;
    for (int a = 0; a < n_; ++a)
      if (indeg[a] == 0) q.push(a);
    while (!q.empty()) {
      int a = q.top();
      q.pop();
      order.push_back(a);
      Subset m = up_[a];
      while (m) {
        int b = __builtin_ctzll(m);
        m &= m - 1;
        if (--indeg[b] == 0) q.push(b);
      }
    }
    return order;
  }

  bool operator==(const Poset& o) const { return n_ == o.n_ && up_ == o.up_; }

 private:
  int n_;
  std::vector<Subset> up_, down_;
};

inline bool is_filter(const Poset& p, Subset s) {
  for (int a = 0; a < p.size(); ++a)
    if ((s & bit(a)) && (p.above(a) & ~s)) return false;
  return true;
}

inline Subset principal_filter(const Poset& p, int a) { return bit(a) | p.above(a); }

// All filters (up-sets), ascending as masks. Elements are decided in
// reverse linear-extension order so the upward-closure test only looks at
// already decided elements.
inline std::vector<Subset> filters(const Poset& p) {
  std::vector<int> order = p.linear_extension();
  std::vector<Subset> out;
  Subset cur = 0;
  auto rec = [&](auto&& self, int idx) -> void {
    if (idx < 0) {
      out.push_back(cur);
      return;
    }
    int a = order[idx];
    self(self, idx - 1);
    if ((p.above(a) & ~cur) == 0) {
      cur |= bit(a);
      self(self, idx - 1);
      cur &= ~bit(a);
    }
  };
  rec(rec, p.size() - 1);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Subset> ideals(const Poset& p) {
  std::vector<Subset> out = filters(p);
  Subset all = p.size() == kMaxElements ? ~Subset{0} : bit(p.size()) - 1;
  for (Subset& s : out) s = all & ~s;
  std::sort(out.begin(), out.end());
  return out;
}

// Stanley's edge criterion for the order polytope: indicator vertices of
// filters f and f2 span an edge iff one strictly contains the other and the
// difference induces a connected comparability graph.
inline bool order_polytope_is_edge(const Poset& p, Subset f, Subset f2) {
  if (f == f2) return false;
  Subset small = f, large = f2;
  if ((small & ~large) != 0) std::swap(small, large);
  if ((small & ~large) != 0) return false;
  Subset diff = large & ~small;
  int start = __builtin_ctzll(diff);
  Subset seen = bit(start);
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    Subset nbrs = (p.above(a) | p.below(a)) & diff & ~seen;
    while (nbrs) {
      int b = __builtin_ctzll(nbrs);
      nbrs &= nbrs - 1;
      seen |= bit(b);
      stack.push_back(b);
    }
  }
  return seen == diff;
}

}  // namespace dop
