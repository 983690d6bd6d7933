#pragma once

// Constrained ordered equilibrium problems over finite posets: the
// order-optimization mappings, the product correspondence built from them,
// the solution predicate, brute-force enumeration, hypothesis checks and the
// monotone-climb solver.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "roep/order_maps.hpp"
#include "roep/poset.hpp"

namespace roep {

/// (x, y) with x an element of C's parent and y an element of D's parent.
struct Pair {
  Element x = 0;
  Element y = 0;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Total table T: C x D -> U.
class ObjectiveMap {
 public:
  /// `table` is row-major over (C position, D position). Throws
  /// ValidationError when sizes disagree or a value lies outside U.
  ObjectiveMap(Subset c, Subset d, PosetPtr u, std::vector<Element> table);

  Element at(Element x, Element y) const;
  const Poset& utility() const noexcept { return *u_; }
  const std::vector<Element>& table() const noexcept { return table_; }

 private:
  Subset c_;
  Subset d_;
  PosetPtr u_;
  std::vector<Element> table_;
};

class ProblemInstance {
 public:
  /// F: C -> nonempty subsets of D, G: D -> nonempty subsets of C.
  /// Throws ValidationError naming the inconsistent component.
  ProblemInstance(Subset c, Subset d, PosetPtr u, ObjectiveMap t, SetValuedMap f, SetValuedMap g,
                  std::optional<Pair> seed = std::nullopt);

  const Subset& c() const noexcept { return c_; }
  const Subset& d() const noexcept { return d_; }
  const Poset& x_order() const noexcept { return c_.poset(); }
  const Poset& y_order() const noexcept { return d_.poset(); }
  const Poset& u() const noexcept { return *u_; }
  const PosetPtr& utility() const noexcept { return u_; }
  const ObjectiveMap& t() const noexcept { return t_; }
  const SetValuedMap& f() const noexcept { return f_; }
  const SetValuedMap& g() const noexcept { return g_; }
  const std::optional<Pair>& seed() const noexcept { return seed_; }

  Element value(Element x, Element y) const { return t_.at(x, y); }
  Element value(Pair p) const { return t_.at(p.x, p.y); }

  /// Component-wise order on C x D.
  bool pair_leq(Pair a, Pair b) const { return x_order().leq(a.x, b.x) && y_order().leq(a.y, b.y); }
  bool pair_less(Pair a, Pair b) const { return a != b && pair_leq(a, b); }

  /// Throws UnknownElement unless x in C and y in D.
  Pair pair(std::string_view x, std::string_view y) const;
  void require_pair(Pair p) const;
  std::string pair_name(Pair p) const;

  std::size_t pair_count() const noexcept { return c_.size() * d_.size(); }
  std::vector<Pair> pairs() const;

  ProblemInstance with_seed(std::optional<Pair> seed) const;

 private:
  Subset c_;
  Subset d_;
  PosetPtr u_;
  ObjectiveMap t_;
  SetValuedMap f_;
  SetValuedMap g_;
  std::optional<Pair> seed_;
};

// Order-optimization mappings.

/// Feasible argmin: y in F(x) whose value T(x, y) is minimal in T(x, F(x)).
Subset phi(const ProblemInstance& inst, Element x);
/// Feasible argmax: x in G(y) whose value T(x, y) is maximal in T(G(y), y).
Subset psi(const ProblemInstance& inst, Element y);
/// phi and psi with the constraint maps replaced by the constants D and C.
Subset global_phi(const ProblemInstance& inst, Element x);
Subset global_psi(const ProblemInstance& inst, Element y);

SetValuedMap phi_map(const ProblemInstance& inst);
SetValuedMap psi_map(const ProblemInstance& inst);

/// psi(y) x phi(x), in lexicographic order.
std::vector<Pair> gamma(const ProblemInstance& inst, Element x, Element y);
/// Pairs p with p in gamma(p).
std::vector<Pair> gamma_fixed_points(const ProblemInstance& inst);

// Solution predicate.

struct SolutionCertificate {
  Pair pair;
  bool row_feasible = false;     // x* in G(y*)
  bool column_feasible = false;  // y* in F(x*)
  std::vector<Element> rows_checked;
  std::vector<Element> columns_checked;
  std::vector<Element> row_violators;     // x in G(y*) with T(x, y*) > T(x*, y*)
  std::vector<Element> column_violators;  // y in F(x*) with T(x*, y) < T(x*, y*)

  bool holds() const {
    return row_feasible && column_feasible && row_violators.empty() && column_violators.empty();
  }
  explicit operator bool() const { return holds(); }
};

/// Evaluated directly from T, F and G; independent of phi, psi and gamma.
SolutionCertificate is_solution(const ProblemInstance& inst, Element x, Element y);
inline SolutionCertificate is_solution(const ProblemInstance& inst, Pair p) { return is_solution(inst, p.x, p.y); }

/// Brute-force scan of C x D, lexicographically ordered.
std::vector<Pair> solution_set(const ProblemInstance& inst);

// Hypotheses.

enum class Direction { ascending, descending };

struct HypothesisReport {
  Direction direction = Direction::ascending;
  Pair seed;
  MonotonicityReport phi;
  MonotonicityReport psi;
  bool monotone = false;         // phi and psi increasing upward (descending: downward)
  bool values_complete = false;  // every phi, psi value universally inductive (bi- when descending)
  bool seed_condition = false;
  std::optional<Element> witness_z;  // z in psi(y') bounding x'
  std::optional<Element> witness_u;  // u in phi(x') bounding y'

  bool passed() const { return monotone && values_complete && seed_condition; }
};

/// Ascending hypotheses at `seed`: phi, psi increasing upward, their values
/// universally inductive, and some u in phi(x'), z in psi(y') with x' <= z, y' <= u.
HypothesisReport check_hypotheses(const ProblemInstance& inst, Pair seed);
/// Order-dual hypotheses: increasing downward, bi-inductive values, and
/// some u in phi(x''), z in psi(y'') with z <= x'', u <= y''.
HypothesisReport check_dual_hypotheses(const ProblemInstance& inst, Pair seed);

/// Lexicographically first pair passing the hypotheses of `dir`.
std::optional<Pair> find_seed(const ProblemInstance& inst, Direction dir = Direction::ascending);

// Solver.

struct SolveOptions {
  /// Run even when the hypotheses fail; the report is then marked
  /// existence-unguaranteed.
  bool force = false;
};

struct SolutionReport {
  Direction direction = Direction::ascending;
  std::vector<Pair> solutions;
  std::optional<Pair> maximal_solution;
  std::optional<Pair> minimal_solution;
  std::optional<HypothesisReport> hypotheses;
  bool existence_guaranteed = false;
  /// The climb ended at a pair with no admissible successor; only possible
  /// when forced past failing hypotheses.
  bool climb_stalled = false;
  /// Seed first; each entry strictly above (descending: below) the previous.
  std::vector<Pair> climb_trace;
  std::vector<SolutionCertificate> certificates;
};

/// Climbs from `seed` along gamma to a fixed point, then promotes it to a
/// maximal element of S above the seed by exhaustive scan.
/// Throws HypothesisFailed (unless forced) or NoSolution.
SolutionReport solve_maximal(const ProblemInstance& inst, Pair seed, SolveOptions opts = {});
/// The order-dual climb: descends from `seed` to a minimal solution below it.
SolutionReport solve_minimal(const ProblemInstance& inst, Pair seed, SolveOptions opts = {});

/// Full solution set with certificates; no hypotheses involved.
SolutionReport enumerate_solutions(const ProblemInstance& inst);

/// Scalar form of the solution condition: max over G(y*) of T(., y*) equals
/// T(x*, y*) equals min over F(x*) of T(x*, .). Throws UtilityNotTotal.
bool scalar_saddle_check(const ProblemInstance& inst, Element x, Element y);

// Reductions.

enum class ReduceSide { f, g, both };

/// Replaces F (by x -> D), G (by y -> C), or both.
ProblemInstance reduce_to_oep(const ProblemInstance& inst, ReduceSide side = ReduceSide::both);

/// Same instance over the reversed orders of X and Y (U unchanged).
ProblemInstance order_dual(const ProblemInstance& inst);

}  // namespace roep
