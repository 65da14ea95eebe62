#pragma once

#include "geometry.hpp"
#include "poset.hpp"
#include "rational.hpp"

namespace dop {

// O(P) = { f in [0,1]^P : f(a) <= f(b) whenever a < b }. Its vertices are
// the indicator vectors of filters.
inline VPolytope order_polytope_vertices(const Poset& p) {
  const int n = p.size();
  VPolytope v;
  v.dim = n;
  for (Subset f : filters(p)) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = (f >> i) & 1;
    v.vertices.push_back(std::move(x));
  }
  return v;
}

// Irredundant facet list: one inequality per cover relation, one lower
// bound per minimal element, one upper bound per maximal element.
inline HPolytope order_polytope_inequalities(const Poset& p) {
  const int n = p.size();
  HPolytope h;
  h.dim = n;
  for (auto [a, b] : p.covers()) {
    Vec l(n, 0);
    l[a] = 1;
    l[b] = -1;
    h.inequalities.push_back({std::move(l), 0});
  }
  for (int a = 0; a < n; ++a) {
    if (p.below(a) == 0) {
      Vec l(n, 0);
      l[a] = -1;
      h.inequalities.push_back({std::move(l), 0});
    }
    if (p.above(a) == 0) {
      Vec l(n, 0);
      l[a] = 1;
      h.inequalities.push_back({std::move(l), 1});
    }
  }
  return h;
}

}  // namespace dop
