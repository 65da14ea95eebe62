#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "double_poset.hpp"
#include "errors.hpp"
#include "poset.hpp"

namespace dop {

struct Instance {
  std::vector<std::string> labels;
  DoublePoset dp;
};

/*
 * Instance files are JSON with exactly the keys "elements" (unique label
 * strings), "plus" and "minus" (lists of [from, to] label pairs). Pairs
 * need not be cover relations; both orders are closed transitively.
 */
inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j.contains("plus") ||
      !j.contains("minus"))
    throw ParseError("expected an object with elements, plus, minus");
  if (!j["elements"].is_array() || !j["plus"].is_array() ||
      !j["minus"].is_array())
    throw ParseError("elements, plus and minus must be arrays");

  std::vector<std::string> labels;
  std::map<std::string, int> index;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw ParseError("element labels must be strings");
    std::string label = e.get<std::string>();
    if (index.count(label)) throw ParseError("duplicate label: " + label);
    index.emplace(label, static_cast<int>(labels.size()));
    labels.push_back(std::move(label));
  }
  const int n = static_cast<int>(labels.size());
  if (n > kMaxElements) throw GuardExceeded("too many elements");

  auto read_pairs = [&](const char* key) {
    std::vector<std::pair<int, int>> rel;
    for (const auto& pr : j[key]) {
      if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() ||
          !pr[1].is_string())
        throw ParseError(std::string(key) + " entries must be label pairs");
      auto find = [&](const std::string& s) {
        auto it = index.find(s);
        if (it == index.end()) throw UnknownLabel("unknown label: " + s);
        return it->second;
      };
      rel.emplace_back(find(pr[0].get<std::string>()),
                       find(pr[1].get<std::string>()));
    }
    return rel;
  };
  Poset plus = Poset::from_relations(n, read_pairs("plus"));
  Poset minus = Poset::from_relations(n, read_pairs("minus"));
  return {std::move(labels), DoublePoset(std::move(plus), std::move(minus))};
}

// Emits the cover pairs of each order, so parse(render(x)) == x.
inline std::string render_instance(const Instance& inst) {
  nlohmann::ordered_json j;
  j["elements"] = inst.labels;
  for (const char* key : {"plus", "minus"}) {
    const Poset& p =
        key == std::string("plus") ? inst.dp.plus : inst.dp.minus;
    auto arr = nlohmann::ordered_json::array();
    for (auto [a, b] : p.covers())
      arr.push_back({inst.labels[a], inst.labels[b]});
    j[key] = std::move(arr);
  }
  return j.dump(2) + "\n";
}

inline std::vector<std::string> default_labels(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

// All strict orders on n labeled elements, by filtering every antisymmetric
// relation for transitivity. Counts reproduce 1, 3, 19, 219 for n = 1..4.
inline std::vector<Poset> all_posets(int n) {
  if (n > 4) throw GuardExceeded("exhaustive enumeration limited to n <= 4");
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) slots.emplace_back(a, b);
  const int m = static_cast<int>(slots.size());
  std::vector<Poset> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    bool rel[4][4] = {};
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1) rel[slots[i].first][slots[i].second] = true;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        if (rel[a][b] && rel[b][a]) ok = false;
        for (int c = 0; c < n && ok; ++c)
          if (rel[a][b] && rel[b][c] && !rel[a][c]) ok = false;
      }
    if (!ok) continue;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1) pairs.push_back(slots[i]);
    out.push_back(Poset::from_relations(n, pairs));
  }
  return out;
}

/*
 * Random labeled poset: a random permutation fixes a linear order, each of
 * its n(n-1)/2 forward pairs is kept with probability 1/2, and the result
 * is closed transitively. Shuffling is hand-rolled so a seed produces the
 * same stream on every platform.
 */
inline Poset random_poset(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() & 1) pairs.emplace_back(perm[i], perm[j]);
  return Poset::from_relations(n, pairs);
}

inline DoublePoset random_double_poset(int n, std::mt19937_64& rng) {
  Poset plus = random_poset(n, rng);
  Poset minus = random_poset(n, rng);
  return DoublePoset(std::move(plus), std::move(minus));
}

}  // namespace dop
