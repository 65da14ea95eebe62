#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "double_poset.hpp"
#include "rational.hpp"

namespace dop {

using Json = nlohmann::ordered_json;

inline std::string walk_to_string(const std::vector<std::string>& labels,
                                  const AlternatingChain& c) {
  std::string s = "bot";
  for (int i = 0; i < c.segments(); ++i) {
    s += " <";
    s += sign_char(c.segment_sign(i));
    s += ' ';
    s += i + 1 == c.segments() ? "top" : labels[c.nodes[i]];
  }
  return s;
}

inline std::string walk_to_string(const std::vector<std::string>& labels,
                                  const AlternatingCycle& c) {
  std::string s = labels[c.nodes[0]];
  for (int i = 0; i < c.length(); ++i) {
    s += " <";
    s += sign_char(c.segment_sign(i));
    s += ' ';
    s += labels[c.nodes[(i + 1) % c.length()]];
  }
  return s;
}

// Renders "normal . (f, t) <= rhs" like "-f(a) + t <= 1"; with_t says the
// final coordinate is the t coefficient.
inline std::string inequality_to_string(const std::vector<std::string>& labels,
                                        const Vec& normal, const Rat& rhs,
                                        bool with_t) {
  const int n = static_cast<int>(labels.size());
  std::string s;
  auto term = [&](const Rat& c, const std::string& var) {
    if (c == 0) return;
    Rat mag = c < 0 ? Rat(-c) : c;
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (mag != 1) s += to_string(mag) + " ";
    s += var;
  };
  for (int i = 0; i < n; ++i) term(normal[i], "f(" + labels[i] + ")");
  if (with_t) term(normal[n], "t");
  if (s.empty()) s = "0";
  return s + " <= " + to_string(rhs);
}

inline Json json_rat(const Rat& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p())
    return Json(r.get_num().get_si());
  return Json(to_string(r));
}

inline Json json_vec(const Vec& v) {
  Json a = Json::array();
  for (const Rat& r : v) a.push_back(json_rat(r));
  return a;
}

inline Json json_walk(const std::vector<std::string>& labels,
                      const AlternatingChain& c) {
  Json j;
  j["kind"] = "chain";
  Json nodes = Json::array();
  for (int p : c.nodes) nodes.push_back(labels[p]);
  j["nodes"] = std::move(nodes);
  j["start_sign"] = std::string(1, sign_char(c.start_sign));
  j["sign"] = std::string(1, sign_char(c.sign()));
  j["text"] = walk_to_string(labels, c);
  return j;
}

inline Json json_walk(const std::vector<std::string>& labels,
                      const AlternatingCycle& c) {
  Json j;
  j["kind"] = "cycle";
  Json nodes = Json::array();
  for (int p : c.nodes) nodes.push_back(labels[p]);
  j["nodes"] = std::move(nodes);
  j["start_sign"] = std::string(1, sign_char(c.start_sign));
  j["text"] = walk_to_string(labels, c);
  return j;
}

inline Json json_witness(const std::vector<std::string>& labels,
                         const CrossingWitness& w) {
  Json j;
  j["element"] = labels[w.element];
  j["segment_i"] = w.seg_i;
  j["segment_j"] = w.seg_j;
  j["tau"] = std::string(1, sign_char(w.tau));
  j["sigma"] = std::string(1, sign_char(w.sigma));
  return j;
}

inline Json json_report(const VerificationReport& r) {
  Json j;
  j["n"] = r.n;
  j["compatible"] = r.compatible;
  j["two_level"] = r.two_level;
  Json counts;
  counts["chains"] = r.chain_count;
  counts["cycles"] = r.cycle_count;
  counts["uncrossed_chains"] = r.uncrossed_chain_count;
  counts["uncrossed_cycles"] = r.uncrossed_cycle_count;
  counts["t_facets"] = r.t_facet_count;
  counts["t_vertices"] = r.t_vertex_count;
  counts["d_facets"] = r.d_facet_count;
  counts["d_vertices"] = r.d_vertex_count;
  counts["degenerate_splits"] = r.degenerate_split_count;
  j["counts"] = std::move(counts);
  Json invariants;
  invariants["facet_soundness"] = r.facet_soundness;
  invariants["facet_completeness"] = r.facet_completeness;
  invariants["max_value_bounds"] = r.max_value_bounds;
  invariants["split_identity"] = r.split_identity;
  invariants["compatibility_equiv"] = r.compatibility_equiv;
  invariants["two_level_necessity"] = r.two_level_necessity;
  invariants["vertex_characterization"] = r.vertex_characterization;
  invariants["facet_normals_from_walks"] = r.facet_normals_from_walks;
  j["invariants"] = std::move(invariants);
  Json claims;
  claims["facet_bijection"] = r.facet_bijection;
  claims["max_value_lemmas"] = r.max_value_lemmas;
  claims["two_level_agreement"] = r.two_level_agreement;
  j["claims"] = std::move(claims);
  j["invariants_pass"] = r.invariants_pass();
  j["claims_pass"] = r.claims_pass();
  j["all_pass"] = r.all_pass();
  return j;
}

}  // namespace dop
