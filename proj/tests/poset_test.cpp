#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "dop/geometry.hpp"
#include "dop/instance.hpp"
#include "dop/linalg.hpp"
#include "dop/order_polytope.hpp"
#include "dop/poset.hpp"

using namespace dop;

namespace {

// Filters by brute force over all 2^n subsets, using only the less relation.
std::vector<Subset> naive_filters(const Poset& p) {
  const int n = p.size();
  std::vector<Subset> out;
  for (Subset s = 0; s < (Subset{1} << n); ++s) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if ((s & bit(a)) && p.less(a, b) && !(s & bit(b))) ok = false;
    if (ok) out.push_back(s);
  }
  return out;
}

bool same_inequality_set(std::vector<Halfspace> a, std::vector<Halfspace> b) {
  auto lt = [](const Halfspace& x, const Halfspace& y) {
    return vec_less(x.normal, y.normal) || (x.normal == y.normal && x.rhs < y.rhs);
  };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  return a == b;
}

// Two vertices span an edge iff the facets tight at both cut out a line:
// rank of their normals is dim - 1 (order polytopes are full-dimensional).
bool geometric_edge(const HPolytope& h, const Vec& u, const Vec& v) {
  Mat tight;
  for (const auto& f : h.inequalities)
    if (dot(f.normal, u) == f.rhs && dot(f.normal, v) == f.rhs)
      tight.push_back(f.normal);
  return rank(tight) == h.dim - 1;
}

}  // namespace

TEST_CASE("transitive closure and cycle rejection") {
  Poset p = Poset::from_relations(3, {{0, 1}, {1, 2}});
  REQUIRE(p.less(0, 1));
  REQUIRE(p.less(1, 2));
  REQUIRE(p.less(0, 2));
  REQUIRE_FALSE(p.less(2, 0));
  REQUIRE_FALSE(p.less(0, 0));
  REQUIRE(p.leq(0, 0));
  REQUIRE(p.comparable(0, 2));
  REQUIRE_FALSE(p.comparable(1, 1));

  REQUIRE_THROWS_AS(Poset::from_relations(2, {{0, 1}, {1, 0}}), CycleError);
  REQUIRE_THROWS_AS(Poset::from_relations(1, {{0, 0}}), CycleError);
  REQUIRE_THROWS_AS(Poset::from_relations(3, {{0, 1}, {1, 2}, {2, 0}}),
                    CycleError);
  REQUIRE_THROWS_AS(Poset::from_relations(2, {{0, 5}}), std::out_of_range);
}

TEST_CASE("covers") {
  Poset chain = Poset::from_relations(3, {{0, 1}, {1, 2}});
  REQUIRE(chain.covers() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  Poset anti(3);
  REQUIRE(anti.covers().empty());

  // an explicit transitive pair is not a cover
  Poset closed = Poset::from_relations(3, {{0, 1}, {1, 2}, {0, 2}});
  REQUIRE(closed.covers() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("minima, maxima, principal filters") {
  Poset chain = Poset::from_relations(3, {{0, 1}, {1, 2}});
  REQUIRE(chain.minimal_elements() == bit(0));
  REQUIRE(chain.maximal_elements() == bit(2));
  REQUIRE(principal_filter(chain, 1) == (bit(1) | bit(2)));

  Poset two = Poset::from_relations(2, {{0, 1}});
  REQUIRE(principal_filter(two, 0) == Subset{3});
  Poset anti(2);
  REQUIRE(principal_filter(anti, 1) == bit(1));
}

TEST_CASE("filters and ideals") {
  Poset two = Poset::from_relations(2, {{0, 1}});
  REQUIRE(filters(two) == std::vector<Subset>{0, 2, 3});
  REQUIRE(ideals(two) == std::vector<Subset>{0, 1, 3});

  Poset anti(2);
  REQUIRE(filters(anti).size() == 4);

  Poset one(1);
  REQUIRE(ideals(one) == std::vector<Subset>{0, 1});
}

TEST_CASE("filters agree with naive subset filtering") {
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : all_posets(n)) {
      REQUIRE(filters(p) == naive_filters(p));
      // ideals are exactly the complements
      Subset all = bit(n) - 1;
      std::vector<Subset> comp;
      for (Subset f : filters(p)) comp.push_back(all & ~f);
      std::sort(comp.begin(), comp.end());
      REQUIRE(ideals(p) == comp);
      // every filter of the opposite order is an ideal
      REQUIRE(filters(p.opposite()) == ideals(p));
    }
}

TEST_CASE("linear extension is order preserving") {
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : all_posets(n)) {
      std::vector<int> order = p.linear_extension();
      REQUIRE(static_cast<int>(order.size()) == n);
      std::vector<int> pos(n, -1);
      for (int i = 0; i < n; ++i) {
        REQUIRE(order[i] >= 0);
        REQUIRE(order[i] < n);
        REQUIRE(pos[order[i]] == -1);
        pos[order[i]] = i;
      }
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (p.less(a, b)) REQUIRE(pos[a] < pos[b]);
    }
}

TEST_CASE("opposite is an involution") {
  for (const Poset& p : all_posets(3)) {
    REQUIRE(p.opposite().opposite() == p);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        REQUIRE(p.less(a, b) == p.opposite().less(b, a));
  }
}

TEST_CASE("order polytope vertices") {
  Poset one(1);
  auto v1 = order_polytope_vertices(one);
  REQUIRE(v1.vertices == std::vector<Vec>{{0}, {1}});

  Poset two = Poset::from_relations(2, {{0, 1}});
  auto v2 = order_polytope_vertices(two);
  REQUIRE(v2.vertices == std::vector<Vec>{{0, 0}, {0, 1}, {1, 1}});

  Poset anti(2);
  REQUIRE(order_polytope_vertices(anti).vertices.size() == 4);
}

TEST_CASE("order polytope inequalities match the 2-chain") {
  Poset two = Poset::from_relations(2, {{0, 1}});
  HPolytope h = order_polytope_inequalities(two);
  std::vector<Halfspace> expected = {
      {{1, -1}, 0}, {{-1, 0}, 0}, {{0, 1}, 1}};
  REQUIRE(same_inequality_set(h.inequalities, expected));

  Poset one(1);
  HPolytope h1 = order_polytope_inequalities(one);
  REQUIRE(same_inequality_set(h1.inequalities, {{{-1}, 0}, {{1}, 1}}));

  Poset anti(2);
  REQUIRE(order_polytope_inequalities(anti).inequalities.size() == 4);
}

TEST_CASE("vertex and inequality descriptions agree") {
  auto check = [](const Poset& p) {
    auto v = order_polytope_vertices(p);
    auto hull = convex_hull(v.dim, v.vertices);
    REQUIRE(hull.hrep.equations.empty());
    REQUIRE(same_inequality_set(hull.hrep.inequalities,
                                order_polytope_inequalities(p).inequalities));
    // every listed point really is a vertex
    REQUIRE(hull.vertex_indices.size() == v.vertices.size());
  };
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : all_posets(n)) check(p);
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 10; ++rep) check(random_poset(5, rng));
  for (int rep = 0; rep < 5; ++rep) check(random_poset(6, rng));
}

TEST_CASE("edge criterion examples") {
  Poset two = Poset::from_relations(2, {{0, 1}});
  REQUIRE(order_polytope_is_edge(two, 0, bit(1)));
  REQUIRE(order_polytope_is_edge(two, 0, bit(0) | bit(1)));
  Poset anti(2);
  REQUIRE_FALSE(order_polytope_is_edge(anti, 0, bit(0) | bit(1)));
  REQUIRE_FALSE(order_polytope_is_edge(anti, bit(0), bit(0)));
  // incomparable sets are never edges
  REQUIRE_FALSE(order_polytope_is_edge(anti, bit(0), bit(1)));
}

TEST_CASE("edge criterion agrees with the hull") {
  auto check = [](const Poset& p) {
    const int n = p.size();
    auto fs = filters(p);
    auto v = order_polytope_vertices(p);
    auto hull = convex_hull(n, v.vertices);
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j)
        REQUIRE(order_polytope_is_edge(p, fs[i], fs[j]) ==
                geometric_edge(hull.hrep, v.vertices[i], v.vertices[j]));
  };
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : all_posets(n)) check(p);
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 8; ++rep) check(random_poset(5, rng));
}

TEST_CASE("size guard") {
  REQUIRE_THROWS_AS(Poset(61), GuardExceeded);
  REQUIRE_NOTHROW(Poset(60));
}
