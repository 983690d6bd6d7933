#pragma once

// Per-instance property checks shared by the unit property tests and the
// acceptance runner. Each returns an empty string on success, otherwise a
// short description of the first violation.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "roep/equilibrium.hpp"
#include "roep/error.hpp"
#include "roep/poset.hpp"

namespace roep::test {

inline bool in_set(const std::vector<Pair>& sorted, Pair p) { return std::binary_search(sorted.begin(), sorted.end(), p); }

inline std::string describe(const ProblemInstance& inst, const std::vector<Pair>& ps) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < ps.size(); ++i) os << (i ? " " : "") << inst.pair_name(ps[i]);
  os << "}";
  return os.str();
}

inline std::string check_trace(const ProblemInstance& inst, const SolutionReport& r) {
  const auto& t = r.climb_trace;
  if (t.empty()) return "empty climb trace";
  if (t.size() > inst.pair_count()) return "trace longer than |C||D|";
  for (std::size_t i = 1; i < t.size(); ++i) {
    bool ok = r.direction == Direction::ascending ? inst.pair_less(t[i - 1], t[i]) : inst.pair_less(t[i], t[i - 1]);
    if (!ok) return "trace step " + inst.pair_name(t[i - 1]) + " -> " + inst.pair_name(t[i]) + " not strict";
  }
  return {};
}

/// Fixed points of gamma, solution_set and the brute-force oracle agree.
inline std::string check_oracle_identity(const ProblemInstance& inst) {
  auto fp = gamma_fixed_points(inst);
  auto s = solution_set(inst);
  auto o = oracle_solutions(inst);
  if (fp != s) return "fixed points " + describe(inst, fp) + " vs solution_set " + describe(inst, s);
  if (s != o) return "solution_set " + describe(inst, s) + " vs oracle " + describe(inst, o);
  return {};
}

/// Existence and maximality at a seed that passes the ascending hypotheses.
/// The climb trace itself is left to check_trace.
inline std::string check_maximal_contract(const ProblemInstance& inst, Pair seed, SolutionReport* out = nullptr) {
  auto s = oracle_solutions(inst);
  if (s.empty()) return "hypotheses pass at " + inst.pair_name(seed) + " but S is empty";
  SolutionReport r;
  try {
    r = solve_maximal(inst, seed);
  } catch (const Error& e) {
    return std::string("solve_maximal threw ") + e.what();
  }
  if (out) *out = r;
  if (!r.maximal_solution) return "no maximal solution reported";
  Pair m = *r.maximal_solution;
  if (!in_set(s, m)) return inst.pair_name(m) + " not in S";
  if (!inst.pair_leq(seed, m)) return inst.pair_name(m) + " not above seed " + inst.pair_name(seed);
  for (Pair q : s)
    if (inst.pair_leq(seed, q) && inst.pair_less(m, q)) return inst.pair_name(q) + " exceeds " + inst.pair_name(m);
  if (!r.existence_guaranteed) return "existence not marked guaranteed";
  if (r.climb_trace.empty() || r.climb_trace.front() != seed) return "trace does not start at the seed";
  return {};
}

/// Order-dual counterpart: a minimal solution below the seed.
inline std::string check_minimal_contract(const ProblemInstance& inst, Pair seed, SolutionReport* out = nullptr) {
  auto s = oracle_solutions(inst);
  if (s.empty()) return "dual hypotheses pass at " + inst.pair_name(seed) + " but S is empty";
  SolutionReport r;
  try {
    r = solve_minimal(inst, seed);
  } catch (const Error& e) {
    return std::string("solve_minimal threw ") + e.what();
  }
  if (out) *out = r;
  if (!r.minimal_solution) return "no minimal solution reported";
  Pair m = *r.minimal_solution;
  if (!in_set(s, m)) return inst.pair_name(m) + " not in S";
  if (!inst.pair_leq(m, seed)) return inst.pair_name(m) + " not below seed " + inst.pair_name(seed);
  for (Pair q : s)
    if (inst.pair_leq(q, seed) && inst.pair_less(q, m)) return inst.pair_name(q) + " is below " + inst.pair_name(m);
  if (r.climb_trace.empty() || r.climb_trace.front() != seed) return "trace does not start at the seed";
  return {};
}

/// Every chain of S (in the product order) has its maximum in S. Skipped
/// (returns empty) when S is too large to enumerate chains cheaply.
inline std::string check_inductive(const ProblemInstance& inst, std::size_t max_s = 14) {
  auto s = oracle_solutions(inst);
  if (s.empty() || s.size() > max_s) return {};
  ProductPoset pp(inst.c().parent(), inst.d().parent());
  std::vector<Element> pool;
  for (Pair p : s) pool.push_back(pp.pair_index(p.x, p.y));
  std::string err;
  for_each_chain(*pp.poset(), pool, [&](std::span<const Element> chain) {
    auto [x, y] = pp.factors(chain.back());
    for (Element e : chain)
      if (!pp.poset()->leq(e, chain.back())) err = "chain maximum is not its last element";
    if (!in_set(s, Pair{x, y})) err = "chain maximum " + inst.pair_name({x, y}) + " outside S";
  });
  return err;
}

inline std::string check_scalar(const ProblemInstance& inst) {
  if (!inst.u().is_total()) return {};
  for (Pair p : inst.pairs())
    if (is_solution(inst, p).holds() != scalar_saddle_check(inst, p.x, p.y))
      return "scalar check disagrees at " + inst.pair_name(p);
  return {};
}

inline std::string check_reduction(const ProblemInstance& inst) {
  ProblemInstance r = reduce_to_oep(inst);
  for (Element x : r.c())
    if (phi(r, x) != global_phi(inst, x)) return "phi differs from global_phi after reduction";
  for (Element y : r.d())
    if (psi(r, y) != global_psi(inst, y)) return "psi differs from global_psi after reduction";
  return {};
}

inline bool singleton_valued(const ProblemInstance& inst) {
  for (Element x : inst.c())
    if (phi(inst, x).size() != 1) return false;
  for (Element y : inst.d())
    if (psi(inst, y).size() != 1) return false;
  return true;
}

/// phi and psi increasing upward and downward.
inline bool bi_monotone(const ProblemInstance& inst) {
  auto a = monotonicity_report(phi_map(inst));
  auto b = monotonicity_report(psi_map(inst));
  return a.increasing && b.increasing;
}

}  // namespace roep::test
