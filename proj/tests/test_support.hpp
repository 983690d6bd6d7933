#pragma once

// Shared builders for the canonical instances I1, I2, I3 and small helpers.

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "roep/equilibrium.hpp"
#include "roep/error.hpp"
#include "roep/poset.hpp"
#include "oracle.hpp"

namespace roep::test {

inline std::string fixture(const std::string& name) { return std::string(ROEP_FIXTURE_DIR) + "/" + name; }

inline PosetPtr chain(const std::string& prefix, std::size_t n) {
  std::vector<std::string> names;
  std::vector<Poset::Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(prefix + std::to_string(i));
    if (i) edges.emplace_back(names[i - 1], names[i]);
  }
  return make_poset(Poset::load(names, edges));
}

inline PosetPtr antichain(const std::string& prefix, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return make_poset(Poset::load(names, {}));
}

inline PosetPtr diamond() { return product(chain("c", 2), chain("d", 2)).poset(); }

template <typename Fn>
void expect_error(ErrorCode code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code) << ", nothing thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

/// Integer-valued instance over X, Y with U the chain of the distinct table
/// values. `f`/`g` list images by member index (empty = constant map).
inline ProblemInstance int_instance(PosetPtr x, PosetPtr y, const std::vector<std::vector<int>>& table,
                                    const std::vector<std::vector<Element>>& f = {},
                                    const std::vector<std::vector<Element>>& g = {}) {
  std::vector<int> distinct;
  for (const auto& row : table) distinct.insert(distinct.end(), row.begin(), row.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::string> names;
  std::vector<Poset::Edge> edges;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    names.push_back(std::to_string(distinct[i]));
    if (i) edges.emplace_back(names[i - 1], names[i]);
  }
  PosetPtr u = make_poset(Poset::load(names, edges));
  Subset c = Subset::all(x);
  Subset d = Subset::all(y);
  std::vector<Element> t;
  for (const auto& row : table)
    for (int v : row)
      t.push_back(static_cast<Element>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()));

  auto build = [](const Subset& dom, const Subset& cod, const std::vector<std::vector<Element>>& images) {
    if (images.empty()) return SetValuedMap::constant(dom, cod);
    std::vector<Subset> values;
    for (const auto& im : images) values.emplace_back(cod.parent(), im);
    return SetValuedMap(dom, cod, std::move(values));
  };
  ObjectiveMap obj(c, d, u, std::move(t));
  return ProblemInstance(c, d, u, std::move(obj), build(c, d, f), build(d, c, g));
}

/// I1: 2-chains, T(ci, dj) = i - j, no constraints.
inline ProblemInstance i1() { return int_instance(chain("c", 2), chain("d", 2), {{0, -1}, {1, 0}}); }

/// I2: I1's objective with F(c0) = {d0}, F(c1) = {d0, d1}, G(d0) = C, G(d1) = {c1}.
inline ProblemInstance i2() {
  return int_instance(chain("c", 2), chain("d", 2), {{0, -1}, {1, 0}}, {{0}, {0, 1}}, {{0, 1}, {1}});
}

/// I3: matching pennies on 2-chains, no constraints.
inline ProblemInstance i3() { return int_instance(chain("c", 2), chain("d", 2), {{1, -1}, {-1, 1}}); }

inline Pair P(const ProblemInstance& inst, const std::string& x, const std::string& y) { return inst.pair(x, y); }

inline std::vector<std::string> names(const Subset& s) { return s.names(); }

inline std::vector<std::string> pair_names(const ProblemInstance& inst, const std::vector<Pair>& ps) {
  std::vector<std::string> out;
  for (Pair p : ps) out.push_back(inst.pair_name(p));
  return out;
}

}  // namespace roep::test
