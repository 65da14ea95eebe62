#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <dop/analysis.hpp>
#include <dop/double_poset.hpp>
#include <dop/errors.hpp>
#include <dop/instance.hpp>
#include <dop/report.hpp>

namespace {

dop::Instance load(const std::string& path, int max_n) {
  std::ifstream in(path);
  if (!in) throw dop::ParseError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  dop::Instance inst = dop::parse_instance(ss.str());
  if (inst.dp.size() > max_n)
    throw dop::GuardExceeded("instance has " + std::to_string(inst.dp.size()) +
                             " elements, --max-n is " + std::to_string(max_n));
  return inst;
}

std::string filter_to_string(const std::vector<std::string>& labels,
                             dop::Subset f) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i)
    if ((f >> i) & 1) {
      if (!first) s += ", ";
      s += labels[i];
      first = false;
    }
  return s + "}";
}

int cmd_chains(const dop::Instance& inst, bool json) {
  const auto& d = inst.dp;
  auto chains = dop::enumerate_chains(d);
  if (json) {
    dop::Json j;
    j["chains"] = static_cast<int>(chains.size());
    auto arr = dop::Json::array();
    int uncrossed = 0;
    for (const auto& c : chains) {
      dop::Json e = dop::json_walk(inst.labels, c);
      auto w = dop::crossing_witness(d, c);
      e["crossed"] = w.has_value();
      if (w) e["witness"] = dop::json_witness(inst.labels, *w);
      else ++uncrossed;
      arr.push_back(std::move(e));
    }
    j["uncrossed"] = uncrossed;
    j["list"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  int uncrossed = 0;
  for (const auto& c : chains)
    if (!dop::crossing_witness(d, c)) ++uncrossed;
  std::cout << "chains: " << chains.size() << " (uncrossed " << uncrossed
            << ")\n";
  for (const auto& c : chains) {
    std::cout << "  " << dop::walk_to_string(inst.labels, c);
    if (auto w = dop::crossing_witness(d, c))
      std::cout << "  crossed by " << inst.labels[w->element] << " (segments "
                << w->seg_i << ", " << w->seg_j << ")";
    else
      std::cout << "  uncrossed";
    std::cout << "\n";
  }
  return 0;
}

int cmd_cycles(const dop::Instance& inst, bool json) {
  const auto& d = inst.dp;
  auto cycles = dop::enumerate_cycles(d);
  if (json) {
    dop::Json j;
    j["cycles"] = static_cast<int>(cycles.size());
    auto arr = dop::Json::array();
    int uncrossed = 0;
    for (const auto& c : cycles) {
      dop::Json e = dop::json_walk(inst.labels, c);
      auto w = dop::crossing_witness(d, c);
      e["crossed"] = w.has_value();
      if (w) e["witness"] = dop::json_witness(inst.labels, *w);
      else ++uncrossed;
      arr.push_back(std::move(e));
    }
    j["uncrossed"] = uncrossed;
    j["list"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  int uncrossed = 0;
  for (const auto& c : cycles)
    if (!dop::crossing_witness(d, c)) ++uncrossed;
  std::cout << "cycles: " << cycles.size() << " (uncrossed " << uncrossed
            << ")\n";
  for (const auto& c : cycles) {
    std::cout << "  " << dop::walk_to_string(inst.labels, c);
    if (auto w = dop::crossing_witness(d, c))
      std::cout << "  crossed by " << inst.labels[w->element] << " (segments "
                << w->seg_i << ", " << w->seg_j << ")";
    else
      std::cout << "  uncrossed";
    std::cout << "\n";
  }
  return 0;
}

// The uncrossed-walk inequalities describe T(P) exactly, but an individual
// one can be redundant (a non-facet). --certify runs the geometric facet
// test on each vertical candidate.
int cmd_facets(const dop::Instance& inst, bool json, bool certify,
               int certify_max_n) {
  const auto& d = inst.dp;
  const int n = d.size();
  if (certify && n > certify_max_n)
    throw dop::GuardExceeded("--certify limited to n <= " +
                             std::to_string(certify_max_n));
  auto certs = dop::facet_certificates(d);
  std::vector<bool> is_facet(certs.size(), true);
  int facet_total = static_cast<int>(certs.size());
  if (certify) {
    for (std::size_t i = 0; i < certs.size(); ++i) {
      dop::Vec l(certs[i].functional.begin(), certs[i].functional.end() - 1);
      is_facet[i] = dop::is_rigid(d, l);
      if (!is_facet[i]) --facet_total;
    }
  }
  dop::Vec up(n + 1, 0), down(n + 1, 0);
  up[n] = 1;
  down[n] = -1;
  if (json) {
    dop::Json j;
    j["vertical_candidates"] = static_cast<int>(certs.size());
    j["horizontal"] = 2;
    j["total_candidates"] = static_cast<int>(certs.size()) + 2;
    if (certify) j["certified_facets"] = facet_total + 2;
    auto arr = dop::Json::array();
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const auto& cert = certs[i];
      dop::Json e;
      e["inequality"] =
          dop::inequality_to_string(inst.labels, cert.functional, cert.rhs, true);
      e["normal"] = dop::json_vec(cert.functional);
      e["rhs"] = dop::json_rat(cert.rhs);
      e["walk"] = std::visit(
          [&](const auto& w) { return dop::json_walk(inst.labels, w); },
          cert.walk);
      if (certify) e["facet"] = static_cast<bool>(is_facet[i]);
      arr.push_back(std::move(e));
    }
    for (const dop::Vec* h : {&up, &down}) {
      dop::Json e;
      e["inequality"] = dop::inequality_to_string(inst.labels, *h, 1, true);
      e["normal"] = dop::json_vec(*h);
      e["rhs"] = dop::json_rat(1);
      if (certify) e["facet"] = true;
      arr.push_back(std::move(e));
    }
    j["list"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "facet candidates of T(P): " << certs.size() + 2 << " ("
            << certs.size() << " vertical, 2 horizontal)\n";
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const auto& cert = certs[i];
    std::cout << "  "
              << dop::inequality_to_string(inst.labels, cert.functional,
                                           cert.rhs, true)
              << "    "
              << std::visit(
                     [&](const auto& w) {
                       return dop::walk_to_string(inst.labels, w);
                     },
                     cert.walk);
    if (certify) std::cout << (is_facet[i] ? "  [facet]" : "  [redundant]");
    std::cout << "\n";
  }
  std::cout << "  " << dop::inequality_to_string(inst.labels, up, 1, true)
            << (certify ? "  [facet]" : "") << "\n";
  std::cout << "  " << dop::inequality_to_string(inst.labels, down, 1, true)
            << (certify ? "  [facet]" : "") << "\n";
  if (certify)
    std::cout << "certified facets: " << facet_total + 2 << "\n";
  return 0;
}

int cmd_hrep(const dop::Instance& inst, bool json) {
  auto h = dop::double_polytope_hrep(inst.dp);
  if (json) {
    dop::Json j;
    j["dim"] = h.dim;
    j["inequalities"] = static_cast<int>(h.inequalities.size());
    auto arr = dop::Json::array();
    for (const auto& f : h.inequalities) {
      dop::Json e;
      e["normal"] = dop::json_vec(f.normal);
      e["rhs"] = dop::json_rat(f.rhs);
      e["text"] = dop::inequality_to_string(inst.labels, f.normal, f.rhs, true);
      arr.push_back(std::move(e));
    }
    j["list"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "dim: " << h.dim << "\n";
  std::cout << "inequalities: " << h.inequalities.size() << "\n";
  for (const auto& f : h.inequalities)
    std::cout << "  "
              << dop::inequality_to_string(inst.labels, f.normal, f.rhs, true)
              << "\n";
  return 0;
}

// A violating segment certifies non-2-levelness. When the criterion is
// satisfied the polytope is usually 2-level but need not be, so the
// affirmative answer is labeled as the criterion, not as ground truth.
int cmd_two_level(const dop::Instance& inst, bool json) {
  auto violation = dop::two_level_violation(inst.dp);
  if (json) {
    dop::Json j;
    j["two_level"] = !violation.has_value();
    if (violation) {
      dop::Json v;
      v["from"] = inst.labels[violation->from];
      v["to"] = inst.labels[violation->to];
      v["sign"] = std::string(1, dop::sign_char(violation->sign));
      j["violating_segment"] = std::move(v);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "two-level: " << (violation ? "false" : "true") << "\n";
  if (violation)
    std::cout << "violating segment: " << inst.labels[violation->from] << " <"
              << dop::sign_char(violation->sign) << " "
              << inst.labels[violation->to] << " (incomparable in "
              << dop::sign_char(dop::flip(violation->sign)) << ")\n";
  else
    std::cout << "note: criterion is necessary for 2-levelness but not "
                 "sufficient; `verify` runs the geometric test\n";
  return 0;
}

int cmd_vertices(const dop::Instance& inst, bool json) {
  const auto& d = inst.dp;
  const int n = d.size();
  struct Row {
    dop::Subset fp, fm;
    dop::Vec point;
  };
  std::vector<Row> rows;
  for (dop::Subset fp : dop::filters(d.plus))
    for (dop::Subset fm : dop::filters(d.minus)) {
      if (!dop::reduced_vertex_check(d, fp, fm)) continue;
      dop::Vec point(n);
      for (int i = 0; i < n; ++i)
        point[i] =
            static_cast<int>((fp >> i) & 1) - static_cast<int>((fm >> i) & 1);
      rows.push_back({fp, fm, std::move(point)});
    }
  if (json) {
    dop::Json j;
    j["vertices"] = static_cast<int>(rows.size());
    auto arr = dop::Json::array();
    for (const auto& r : rows) {
      dop::Json e;
      e["point"] = dop::json_vec(r.point);
      e["f_plus"] = filter_to_string(inst.labels, r.fp);
      e["f_minus"] = filter_to_string(inst.labels, r.fm);
      arr.push_back(std::move(e));
    }
    j["list"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "vertices of D(P): " << rows.size() << "\n";
  for (const auto& r : rows) {
    std::cout << "  (";
    for (int i = 0; i < n; ++i)
      std::cout << (i ? ", " : "") << dop::to_string(r.point[i]);
    std::cout << ")  F+ = " << filter_to_string(inst.labels, r.fp)
              << "  F- = " << filter_to_string(inst.labels, r.fm) << "\n";
  }
  return 0;
}

int cmd_compatible(const dop::Instance& inst, bool json) {
  const auto& d = inst.dp;
  auto ext = dop::common_linear_extension(d);
  if (json) {
    dop::Json j;
    j["compatible"] = ext.has_value();
    if (ext) {
      dop::Json ranks;
      for (int i = 0; i < d.size(); ++i) ranks[inst.labels[i]] = (*ext)[i];
      j["extension_ranks"] = std::move(ranks);
    } else {
      j["cycle"] = dop::json_walk(inst.labels, dop::enumerate_cycles(d).front());
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "compatible: " << (ext ? "true" : "false") << "\n";
  if (ext) {
    std::cout << "extension ranks:";
    for (int i = 0; i < d.size(); ++i)
      std::cout << " " << inst.labels[i] << "=" << (*ext)[i];
    std::cout << "\n";
  } else {
    std::cout << "alternating cycle: "
              << dop::walk_to_string(inst.labels,
                                     dop::enumerate_cycles(d).front())
              << "\n";
  }
  return 0;
}

int cmd_verify(const dop::Instance& inst, bool json, int max_n) {
  auto rep = dop::verify_instance(inst.dp, max_n);
  if (json) {
    std::cout << dop::json_report(rep).dump(2) << "\n";
  } else {
    std::cout << "n: " << rep.n << "\n";
    auto line = [](const char* name, bool ok) {
      std::cout << "  " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
    };
    std::cout << "library invariants:\n";
    line("facet_soundness", rep.facet_soundness);
    line("facet_completeness", rep.facet_completeness);
    line("max_value_bounds", rep.max_value_bounds);
    line("split_identity", rep.split_identity);
    line("compatibility_equiv", rep.compatibility_equiv);
    line("two_level_necessity", rep.two_level_necessity);
    line("vertex_characterization", rep.vertex_characterization);
    line("facet_normals_from_walks", rep.facet_normals_from_walks);
    std::cout << "literal claims (known to fail on some inputs):\n";
    line("facet_bijection", rep.facet_bijection);
    line("max_value_lemmas", rep.max_value_lemmas);
    line("two_level_agreement", rep.two_level_agreement);
    std::cout << "counts: chains=" << rep.chain_count
              << " cycles=" << rep.cycle_count
              << " uncrossed_chains=" << rep.uncrossed_chain_count
              << " uncrossed_cycles=" << rep.uncrossed_cycle_count
              << " t_facets=" << rep.t_facet_count
              << " t_vertices=" << rep.t_vertex_count
              << " d_facets=" << rep.d_facet_count
              << " d_vertices=" << rep.d_vertex_count
              << " degenerate_splits=" << rep.degenerate_split_count << "\n";
    std::cout << "compatible: " << (rep.compatible ? "true" : "false") << "\n";
    std::cout << "two_level: " << (rep.two_level ? "true" : "false") << "\n";
    std::cout << "all checks: " << (rep.all_pass() ? "pass" : "FAIL") << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

int cmd_sweep(const std::string& mode, int n, int count, std::uint64_t seed,
              bool json, int max_n) {
  std::vector<dop::DoublePoset> instances;
  if (mode == "exhaustive") {
    if (n > 4)
      throw dop::GuardExceeded("exhaustive sweep limited to n <= 4");
    auto posets = dop::all_posets(n);
    for (const auto& p : posets)
      for (const auto& m : posets) instances.emplace_back(p, m);
  } else {
    if (n > max_n)
      throw dop::GuardExceeded("random sweep limited to --max-n = " +
                               std::to_string(max_n));
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i)
      instances.push_back(dop::random_double_poset(n, rng));
  }

  const auto labels = dop::default_labels(n);
  struct Finding {
    int index;
    dop::VerificationReport rep;
    std::string dump;
  };
  std::vector<Finding> failures;
  std::vector<Finding> counterexamples;
  long bijection_ce = 0, attainment_ce = 0, two_level_ce = 0;
  for (int i = 0; i < static_cast<int>(instances.size()); ++i) {
    auto rep = dop::verify_instance(instances[i], std::max(n, max_n));
    if (!rep.invariants_pass()) {
      failures.push_back(
          {i, rep, dop::render_instance({labels, instances[i]})});
      continue;
    }
    if (!rep.claims_pass()) {
      if (!rep.facet_bijection) ++bijection_ce;
      if (!rep.max_value_lemmas) ++attainment_ce;
      if (!rep.two_level_agreement) ++two_level_ce;
      counterexamples.push_back(
          {i, rep, dop::render_instance({labels, instances[i]})});
    }
  }

  if (json) {
    dop::Json j;
    j["mode"] = mode;
    j["n"] = n;
    if (mode == "random") {
      j["count"] = count;
      j["seed"] = seed;
    }
    j["instances"] = static_cast<int>(instances.size());
    auto render = [](const std::vector<Finding>& v) {
      auto arr = dop::Json::array();
      for (const auto& f : v) {
        dop::Json e;
        e["index"] = f.index;
        e["instance"] = dop::Json::parse(f.dump);
        e["report"] = dop::json_report(f.rep);
        arr.push_back(std::move(e));
      }
      return arr;
    };
    j["failures"] = render(failures);
    dop::Json ce;
    ce["facet_bijection"] = bijection_ce;
    ce["max_value_lemmas"] = attainment_ce;
    ce["two_level_agreement"] = two_level_ce;
    ce["instances"] = render(counterexamples);
    j["claim_counterexamples"] = std::move(ce);
    j["pass"] = failures.empty();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "sweep: " << mode << " n=" << n;
    if (mode == "random") std::cout << " count=" << count << " seed=" << seed;
    std::cout << "\n";
    std::cout << "instances: " << instances.size() << "\n";
    std::cout << "failures: " << failures.size() << "\n";
    const std::size_t shown = 5;
    for (std::size_t i = 0; i < failures.size() && i < shown; ++i) {
      const auto& f = failures[i];
      std::cout << "failing instance " << f.index << ":\n" << f.dump;
      std::cout << dop::json_report(f.rep).dump(2) << "\n";
    }
    if (failures.size() > shown)
      std::cout << "... " << failures.size() - shown
                << " more failing instances (use --json for all)\n";
    std::cout << "claim counterexamples: " << counterexamples.size()
              << " (facet_bijection " << bijection_ce << ", max_value_lemmas "
              << attainment_ce << ", two_level_agreement " << two_level_ce
              << ")\n";
    for (std::size_t i = 0; i < counterexamples.size() && i < shown; ++i) {
      const auto& f = counterexamples[i];
      std::cout << "claim counterexample " << f.index << ":";
      if (!f.rep.facet_bijection) std::cout << " facet_bijection";
      if (!f.rep.max_value_lemmas) std::cout << " max_value_lemmas";
      if (!f.rep.two_level_agreement) std::cout << " two_level_agreement";
      std::cout << "\n" << f.dump;
    }
    if (counterexamples.size() > shown)
      std::cout << "... " << counterexamples.size() - shown
                << " more counterexamples (use --json for all)\n";
  }
  return failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double order polytope toolkit"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;
  int max_n = 8;

  auto add_instance_cmd = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("file", file, "instance file")->required();
    sub->add_flag("--json", json, "machine-readable output");
    sub->add_option("--max-n", max_n, "element-count guard");
    return sub;
  };

  auto* sc_chains = add_instance_cmd("chains", "list alternating chains");
  auto* sc_cycles = add_instance_cmd("cycles", "list alternating cycles");
  auto* sc_facets =
      add_instance_cmd("facets", "facet candidates of the double polytope");
  bool certify = false;
  int certify_max_n = 6;
  sc_facets->add_flag("--certify", certify,
                      "run the geometric facet test on each candidate");
  sc_facets->add_option("--certify-max-n", certify_max_n,
                        "element-count guard for --certify");
  auto* sc_hrep = add_instance_cmd("hrep", "inequality description of T(P)");
  auto* sc_two_level =
      add_instance_cmd("two-level", "2-level criterion from uncrossed walks");
  auto* sc_vertices =
      add_instance_cmd("vertices", "vertices of the reduced polytope D(P)");
  auto* sc_compatible =
      add_instance_cmd("compatible", "test for a common linear extension");

  int verify_max_n = 6;
  CLI::App* sc_verify =
      app.add_subcommand("verify", "cross-check all characterizations");
  sc_verify->add_option("file", file, "instance file")->required();
  sc_verify->add_flag("--json", json, "machine-readable output");
  sc_verify->add_option("--max-n", verify_max_n, "element-count guard");

  std::string sweep_mode;
  int sweep_n = 0, sweep_count = 20;
  std::uint64_t sweep_seed = 1;
  int sweep_max_n = 6;
  CLI::App* sc_sweep =
      app.add_subcommand("sweep", "verify many instances at once");
  sc_sweep->add_option("--mode", sweep_mode, "exhaustive or random")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "random"}));
  sc_sweep->add_option("--n", sweep_n, "elements per instance")->required();
  sc_sweep->add_option("--count", sweep_count, "random instances to draw");
  sc_sweep->add_option("--seed", sweep_seed, "random seed");
  sc_sweep->add_flag("--json", json, "machine-readable output");
  sc_sweep->add_option("--max-n", sweep_max_n, "element-count guard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sc_sweep->parsed())
      return cmd_sweep(sweep_mode, sweep_n, sweep_count, sweep_seed, json,
                       sweep_max_n);
    if (sc_verify->parsed())
      return cmd_verify(load(file, verify_max_n), json, verify_max_n);
    dop::Instance inst = load(file, max_n);
    if (sc_chains->parsed()) return cmd_chains(inst, json);
    if (sc_cycles->parsed()) return cmd_cycles(inst, json);
    if (sc_facets->parsed())
      return cmd_facets(inst, json, certify, certify_max_n);
    if (sc_hrep->parsed()) return cmd_hrep(inst, json);
    if (sc_two_level->parsed()) return cmd_two_level(inst, json);
    if (sc_vertices->parsed()) return cmd_vertices(inst, json);
    if (sc_compatible->parsed()) return cmd_compatible(inst, json);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
