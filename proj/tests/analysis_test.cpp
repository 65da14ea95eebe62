#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "dop/analysis.hpp"
#include "dop/instance.hpp"
#include "dop/order_polytope.hpp"

using namespace dop;

namespace {

DoublePoset make(int n, std::vector<std::pair<int, int>> plus,
                 std::vector<std::pair<int, int>> minus) {
  return DoublePoset(Poset::from_relations(n, plus),
                     Poset::from_relations(n, minus));
}

DoublePoset single() { return make(1, {}, {}); }
DoublePoset chain_antichain() { return make(2, {{0, 1}}, {}); }
DoublePoset incompatible_pair() { return make(2, {{0, 1}}, {{1, 0}}); }

// uncrossed chain whose inequality is redundant: its functional is the sum
// of two other uncrossed chain functionals
DoublePoset facet_gap() {
  return make(4, {{3, 1}, {3, 2}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

// the walk criterion holds but a facet takes three values
DoublePoset two_level_gap() {
  return make(4, {{0, 1}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}},
              {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {3, 2}});
}

bool same_inequality_set(std::vector<Halfspace> a, std::vector<Halfspace> b) {
  auto lt = [](const Halfspace& x, const Halfspace& y) {
    return vec_less(x.normal, y.normal) || (x.normal == y.normal && x.rhs < y.rhs);
  };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  return a == b;
}

}  // namespace

TEST_CASE("double polytope vertices") {
  auto v = to_vertices(single());
  REQUIRE(v.dim == 2);
  std::set<Vec, VecLess> got(v.vertices.begin(), v.vertices.end());
  std::set<Vec, VecLess> want{{0, 1}, {2, 1}, {0, -1}, {-2, -1}};
  REQUIRE(got == want);

  REQUIRE(to_vertices(chain_antichain()).vertices.size() == 7);

  // the empty ground set leaves a segment on the t axis
  auto e = to_vertices(make(0, {}, {}));
  REQUIRE(e.dim == 1);
  REQUIRE(e.vertices.size() == 2);
}

TEST_CASE("reduced polytope vertices") {
  auto v = reduced_vertices_geometric(single());
  REQUIRE(v.vertices == std::vector<Vec>{{-1}, {1}});

  auto pent = reduced_vertices_geometric(chain_antichain());
  std::set<Vec, VecLess> got(pent.vertices.begin(), pent.vertices.end());
  std::set<Vec, VecLess> want{{1, 1}, {1, 0}, {0, -1}, {-1, -1}, {-1, 1}};
  REQUIRE(got == want);

  // equal orders give a centrally symmetric difference body
  DoublePoset same(Poset::from_relations(3, {{0, 1}}),
                   Poset::from_relations(3, {{0, 1}}));
  auto sym = reduced_vertices_geometric(same);
  std::set<Vec, VecLess> s(sym.vertices.begin(), sym.vertices.end());
  for (const Vec& p : s) {
    Vec neg(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) neg[i] = -p[i];
    REQUIRE(s.count(neg) == 1);
  }
}

TEST_CASE("facet candidates on fixed instances") {
  auto cs = facet_certificates(single());
  REQUIRE(cs.size() == 2);
  for (const auto& c : cs) {
    REQUIRE(c.rhs == 1);
    REQUIRE(std::holds_alternative<AlternatingChain>(c.walk));
  }

  REQUIRE(facet_certificates(chain_antichain()).size() == 5);

  auto ci = facet_certificates(incompatible_pair());
  REQUIRE(ci.size() == 3);
  int cycles = 0;
  for (const auto& c : ci)
    if (std::holds_alternative<AlternatingCycle>(c.walk)) {
      ++cycles;
      REQUIRE(c.rhs == 0);
      REQUIRE(c.functional.back() == 0);
    } else {
      auto [l, s] = chain_functional(incompatible_pair(),
                                     std::get<AlternatingChain>(c.walk));
      REQUIRE(c.functional.back() == -sign_value(s));
    }
  REQUIRE(cycles == 1);
}

TEST_CASE("claimed inequalities equal hull facets on compatible instances") {
  for (const DoublePoset& d :
       {single(), chain_antichain(), incompatible_pair(), make(0, {}, {})}) {
    auto tv = to_vertices(d);
    auto hull = convex_hull(tv.dim, tv.vertices);
    REQUIRE(hull.hrep.equations.empty());
    REQUIRE(same_inequality_set(double_polytope_hrep(d).inequalities,
                                hull.hrep.inequalities));
  }
}

TEST_CASE("prism counts for the incompatible pair") {
  VerificationReport rep = verify_instance(incompatible_pair());
  REQUIRE(rep.t_vertex_count == 6);
  REQUIRE(rep.t_facet_count == 5);
  REQUIRE(rep.d_facet_count == 3);
  REQUIRE(rep.two_level);
  REQUIRE_FALSE(rep.compatible);
  REQUIRE(rep.all_pass());
}

TEST_CASE("rigidity") {
  REQUIRE(is_rigid(chain_antichain(), {1, -1}));
  // functional of the crossed chain bot <+ q <- top
  REQUIRE_FALSE(is_rigid(incompatible_pair(), {0, -1}));
  REQUIRE_THROWS_AS(is_rigid(single(), {0}), ZeroFunctional);
}

TEST_CASE("an uncrossed chain can fail to support a facet") {
  DoublePoset d = facet_gap();
  AlternatingChain longest{{0, 3, 1, 2}, Sign::plus};
  REQUIRE(chain_is_valid(d, longest));
  REQUIRE_FALSE(crossing_witness(d, longest).has_value());

  auto [l, s] = chain_functional(d, longest);
  REQUIRE(l == Vec{-1, -1, 1, 1});
  REQUIRE(s == Sign::plus);

  // its functional splits over two shorter uncrossed chains, so the face it
  // supports has codimension 2
  AlternatingChain left{{0, 3}, Sign::plus}, right{{1, 2}, Sign::plus};
  REQUIRE(chain_is_valid(d, left));
  REQUIRE(chain_is_valid(d, right));
  REQUIRE_FALSE(crossing_witness(d, left).has_value());
  REQUIRE_FALSE(crossing_witness(d, right).has_value());
  auto [ll, sl] = chain_functional(d, left);
  auto [lr, sr] = chain_functional(d, right);
  for (int i = 0; i < 4; ++i) REQUIRE(l[i] == ll[i] + lr[i]);

  REQUIRE_FALSE(is_rigid(d, l));
  REQUIRE(is_rigid(d, ll));
  REQUIRE(is_rigid(d, lr));

  VerificationReport rep = verify_instance(d);
  REQUIRE(rep.invariants_pass());
  REQUIRE(rep.facet_soundness);
  REQUIRE(rep.facet_completeness);
  REQUIRE_FALSE(rep.facet_bijection);

  // the hull has one facet fewer than the candidate list
  auto tv = to_vertices(d);
  auto hull = convex_hull(tv.dim, tv.vertices);
  REQUIRE(hull.hrep.inequalities.size() + 1 ==
          double_polytope_hrep(d).inequalities.size());
}

TEST_CASE("the walk criterion does not imply 2-levelness") {
  DoublePoset d = two_level_gap();
  REQUIRE(is_two_level_combinatorial(d));
  auto tv = to_vertices(d);
  REQUIRE_FALSE(is_two_level(tv));

  // the offending facet takes three values on the vertices
  AlternatingChain c{{3, 2, 0, 1}, Sign::plus};
  REQUIRE(chain_is_valid(d, c));
  REQUIRE_FALSE(crossing_witness(d, c).has_value());
  auto [l, s] = chain_functional(d, c);
  Vec facet = l;
  facet.push_back(-sign_value(s));
  std::set<Rat> values;
  for (const auto& v : tv.vertices) values.insert(dot(facet, v));
  REQUIRE(values == std::set<Rat>{-3, -1, 1});

  VerificationReport rep = verify_instance(d);
  REQUIRE(rep.invariants_pass());
  REQUIRE(rep.two_level_necessity);
  REQUIRE_FALSE(rep.two_level_agreement);
}

TEST_CASE("two-level criterion on fixed instances") {
  REQUIRE(is_two_level_combinatorial(incompatible_pair()));
  REQUIRE_FALSE(is_two_level_combinatorial(chain_antichain()));

  auto seg = two_level_violation(chain_antichain());
  REQUIRE(seg.has_value());
  REQUIRE(seg->from == 0);
  REQUIRE(seg->to == 1);
  REQUIRE(seg->sign == Sign::plus);

  DoublePoset same(Poset::from_relations(2, {{0, 1}}),
                   Poset::from_relations(2, {{0, 1}}));
  REQUIRE(is_two_level_combinatorial(same));
}

TEST_CASE("two-level criterion is swap invariant") {
  for (const Poset& plus : all_posets(3))
    for (const Poset& minus : all_posets(3)) {
      DoublePoset d(plus, minus);
      REQUIRE(is_two_level_combinatorial(d) ==
              is_two_level_combinatorial(d.swapped()));
    }
  REQUIRE(is_two_level_combinatorial(two_level_gap()) ==
          is_two_level_combinatorial(two_level_gap().swapped()));
  REQUIRE(is_two_level(to_vertices(two_level_gap())) ==
          is_two_level(to_vertices(two_level_gap().swapped())));
}

TEST_CASE("face partitions") {
  Poset two = Poset::from_relations(2, {{0, 1}});

  FacePartition fp = face_partition(two, {1, -1});
  REQUIRE(fp.reduced() == std::vector<std::vector<int>>{{0, 1}});

  FacePartition top = face_partition(two, {0, 1});
  REQUIRE(top.reduced() == std::vector<std::vector<int>>{{1, kTop}});

  FacePartition whole = face_partition(two, {0, 0});
  REQUIRE(whole.reduced().empty());
  REQUIRE(whole.blocks.size() == 4);
}

TEST_CASE("normal cones of faces") {
  Poset two = Poset::from_relations(2, {{0, 1}});

  Cone diag = normal_cone(two, face_partition(two, {1, -1}));
  REQUIRE(diag.generators == std::vector<Vec>{{1, -1}});

  Cone top = normal_cone(two, face_partition(two, {0, 1}));
  REQUIRE(top.generators == std::vector<Vec>{{0, 1}});
}

TEST_CASE("normal cone properties") {
  auto probe = [](const Poset& p, const Vec& l) {
    const int n = p.size();
    FacePartition fp = face_partition(p, l);
    Cone c = normal_cone(p, fp);

    // the functional sits in the relative interior of its own normal cone
    REQUIRE(in_relint(c, l));

    // a relint point is positive on block minima, negative on block maxima,
    // zero outside the reduced blocks
    Vec pt(n, 0);
    for (const auto& g : c.generators)
      for (int i = 0; i < n; ++i) pt[i] += g[i];
    std::vector<bool> in_reduced(n, false);
    for (const auto& b : fp.reduced())
      for (int x : b) {
        if (x < 0 || x == kTop) continue;
        in_reduced[x] = true;
        bool is_min = true, is_max = true;
        for (int y : b) {
          if (hat_less(p, y, x)) is_min = false;
          if (hat_less(p, x, y)) is_max = false;
        }
        if (is_min) REQUIRE(pt[x] > 0);
        if (is_max) REQUIRE(pt[x] < 0);
      }
    for (int x = 0; x < n; ++x)
      if (!in_reduced[x]) REQUIRE(pt[x] == 0);

    // vertices of the face are exactly the vertices constant on every block
    auto verts = order_polytope_vertices(p).vertices;
    Rat best = max_over(verts, l);
    for (const auto& v : verts) {
      bool constant = true;
      for (const auto& b : fp.blocks) {
        Rat first;
        bool got = false;
        for (int x : b) {
          Rat val = x == kBot ? Rat(0) : x == kTop ? Rat(1) : v[x];
          if (!got) {
            first = val;
            got = true;
          } else if (val != first) {
            constant = false;
          }
        }
      }
      REQUIRE(constant == (dot(l, v) == best));
    }
  };

  for (int n = 1; n <= 2; ++n) {
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (const Poset& p : all_posets(n))
      for (int code = 0; code < total; ++code) {
        Vec l(n);
        int c = code;
        for (int i = 0; i < n; ++i) {
          l[i] = c % 3 - 1;
          c /= 3;
        }
        probe(p, l);
      }
  }
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    Poset p = random_poset(4, rng);
    Vec l(4);
    for (int i = 0; i < 4; ++i) l[i] = static_cast<int>(rng() % 7) - 3;
    probe(p, l);
  }
}

TEST_CASE("vertex certificates") {
  DoublePoset d = chain_antichain();

  // both intersections empty: the conditions hold vacuously
  auto vac = reduced_vertex_check(d, 3, 0);
  REQUIRE(vac.has_value());
  REQUIRE(vac->chains_i.empty());
  REQUIRE(vac->chains_ii.empty());

  // the origin is interior, not a vertex
  REQUIRE_FALSE(reduced_vertex_check(d, 0, 0).has_value());

  // one element in both filters forces a witness chain through it
  auto cert = reduced_vertex_check(d, bit(1), bit(1));
  REQUIRE_FALSE(cert.has_value());
  auto good = reduced_vertex_check(d, 3, bit(1));
  REQUIRE(good.has_value());
  REQUIRE(good->chains_i.size() == 1);
  REQUIRE(good->chains_i[0].first == 1);
  REQUIRE(good->chains_i[0].second.nodes.back() == 1);
  REQUIRE(chain_is_valid(d, good->chains_i[0].second));

  REQUIRE_THROWS_AS(reduced_vertex_check(d, bit(0), 0), std::invalid_argument);
}

TEST_CASE("certified pairs separate minima and maxima") {
  for (int n = 1; n <= 3; ++n)
    for (const Poset& plus : all_posets(n))
      for (const Poset& minus : all_posets(n)) {
        DoublePoset d(plus, minus);
        const Subset full = bit(n) - 1;
        for (Subset fp : filters(d.plus))
          for (Subset fm : filters(d.minus)) {
            auto cert = reduced_vertex_check(d, fp, fm);
            if (!cert) continue;
            Subset min_p = 0, min_m = 0, max_ip = 0, max_im = 0;
            for (int a = 0; a < n; ++a) {
              if ((fp & bit(a)) && !(d.plus.below(a) & fp)) min_p |= bit(a);
              if ((fm & bit(a)) && !(d.minus.below(a) & fm)) min_m |= bit(a);
              Subset ip = full & ~fp, im = full & ~fm;
              if ((ip & bit(a)) && !(d.plus.above(a) & ip)) max_ip |= bit(a);
              if ((im & bit(a)) && !(d.minus.above(a) & im)) max_im |= bit(a);
            }
            REQUIRE((min_p & min_m) == 0);
            REQUIRE((max_ip & max_im) == 0);
          }
      }
}

TEST_CASE("opposite orders mirror the order polytope") {
  for (const Poset& p : all_posets(3)) {
    std::set<Vec, VecLess> mirrored;
    for (const auto& v : order_polytope_vertices(p).vertices) {
      Vec w(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) w[i] = 1 - v[i];
      mirrored.insert(std::move(w));
    }
    std::set<Vec, VecLess> opp;
    for (const auto& v : order_polytope_vertices(p.opposite()).vertices)
      opp.insert(v);
    REQUIRE(opp == mirrored);
  }
}

TEST_CASE("pairing an order with its opposite scales the order polytope") {
  // D(P) is then a translate of 2 O(P+), so facet counts agree with the
  // irredundant description: covers + minima + maxima
  auto check = [](const Poset& p) {
    DoublePoset d(p, p.opposite());
    auto dv = reduced_vertices_geometric(d);
    auto hull = convex_hull(dv.dim, dv.vertices);
    std::size_t expected = p.covers().size() +
                           __builtin_popcountll(p.minimal_elements()) +
                           __builtin_popcountll(p.maximal_elements());
    REQUIRE(hull.hrep.inequalities.size() == expected);
    REQUIRE(hull.hrep.inequalities.size() ==
            order_polytope_inequalities(p).inequalities.size());
  };
  check(Poset::from_relations(3, {{0, 1}, {1, 2}}));
  check(Poset::from_relations(3, {{0, 2}, {1, 2}}));
  for (const Poset& p : all_posets(3)) check(p);
}

TEST_CASE("verification passes on known-good instances") {
  for (const DoublePoset& d :
       {single(), chain_antichain(), incompatible_pair(), make(0, {}, {})}) {
    VerificationReport rep = verify_instance(d);
    REQUIRE(rep.invariants_pass());
    REQUIRE(rep.claims_pass());
    REQUIRE(rep.all_pass());
  }

  // the five-element splitting example
  DoublePoset fig = make(5, {{0, 1}, {2, 3}, {0, 4}, {4, 1}, {2, 4}, {4, 3}},
                         {{1, 2}, {3, 0}});
  REQUIRE(verify_instance(fig).all_pass());
}

TEST_CASE("verification passes exhaustively at n = 2") {
  for (const Poset& plus : all_posets(2))
    for (const Poset& minus : all_posets(2)) {
      VerificationReport rep = verify_instance(DoublePoset(plus, minus));
      REQUIRE(rep.all_pass());
      REQUIRE(rep.t_facet_count ==
              rep.uncrossed_chain_count + rep.uncrossed_cycle_count + 2);
    }
}

TEST_CASE("verification guard") {
  REQUIRE_THROWS_AS(verify_instance(chain_antichain(), 1), GuardExceeded);
}
