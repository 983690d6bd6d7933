#include "roep/equilibrium.hpp"

#include <algorithm>

#include "roep/error.hpp"

namespace roep {

namespace {

bool same_ground(const Subset& a, const Subset& b) { return a == b; }

// Elements of `candidates` whose value under `value_of` is minimal (or
// maximal) among the values of all candidates.
template <typename ValueOf>
std::vector<Element> extremal_by_value(const Poset& u, const Subset& candidates, ValueOf value_of, bool maximal) {
  std::vector<Element> out;
  for (Element a : candidates) {
    Element va = value_of(a);
    bool beaten = std::any_of(candidates.begin(), candidates.end(), [&](Element b) {
      Element vb = value_of(b);
      return maximal ? u.less(va, vb) : u.less(vb, va);
    });
    if (!beaten) out.push_back(a);
  }
  return out;
}

Subset phi_over(const ProblemInstance& inst, Element x, const Subset& feasible) {
  auto values = extremal_by_value(inst.u(), feasible, [&](Element y) { return inst.value(x, y); }, false);
  return Subset(inst.d().parent(), std::move(values));
}

Subset psi_over(const ProblemInstance& inst, Element y, const Subset& feasible) {
  auto values = extremal_by_value(inst.u(), feasible, [&](Element x) { return inst.value(x, y); }, true);
  return Subset(inst.c().parent(), std::move(values));
}

void require_in(const Subset& s, Element e, const char* what) {
  if (!s.contains(e))
    throw Error(ErrorCode::UnknownElement, std::string(what) + ": element index " + std::to_string(e) + " is not a member");
}

// Order used by a climb in direction `dir`: ascending uses the product
// order, descending its dual.
bool dir_leq(const ProblemInstance& inst, Direction dir, Pair a, Pair b) {
  return dir == Direction::ascending ? inst.pair_leq(a, b) : inst.pair_leq(b, a);
}

HypothesisReport hypotheses_impl(const ProblemInstance& inst, Pair seed, Direction dir) {
  inst.require_pair(seed);
  HypothesisReport r;
  r.direction = dir;
  r.seed = seed;
  const SetValuedMap phis = phi_map(inst);
  const SetValuedMap psis = psi_map(inst);
  r.phi = monotonicity_report(phis);
  r.psi = monotonicity_report(psis);
  r.monotone = dir == Direction::ascending
                   ? r.phi.increasing_upward && r.psi.increasing_upward
                   : r.phi.increasing_downward && r.psi.increasing_downward;

  // Values must be universally inductive in D (for phi) and C (for psi);
  // descending also needs the dual property.
  auto complete = [&](const SetValuedMap& m, const Subset& ambient) {
    const PosetPtr dual = make_poset(ambient.poset().dual());
    const Subset dual_ambient = ambient.rebased(dual);
    return std::all_of(m.values().begin(), m.values().end(), [&](const Subset& v) {
      bool ok = order_completeness_report(v, ambient).universally_inductive;
      if (dir == Direction::descending)
        ok = ok && order_completeness_report(v.rebased(dual), dual_ambient).universally_inductive;
      return ok;
    });
  };
  r.values_complete = complete(phis, inst.d()) && complete(psis, inst.c());

  const Subset& us = phis.at(seed.x);
  const Subset& zs = psis.at(seed.y);
  for (Element z : zs) {
    bool zx = dir == Direction::ascending ? inst.x_order().leq(seed.x, z) : inst.x_order().leq(z, seed.x);
    if (!zx) continue;
    for (Element u : us) {
      bool uy = dir == Direction::ascending ? inst.y_order().leq(seed.y, u) : inst.y_order().leq(u, seed.y);
      if (!uy) continue;
      r.seed_condition = true;
      r.witness_z = z;
      r.witness_u = u;
      break;
    }
    if (r.seed_condition) break;
  }
  return r;
}

// The deterministic climb plus exhaustive promotion shared by both solvers.
SolutionReport climb(const ProblemInstance& inst, Pair seed, SolveOptions opts, Direction dir) {
  HypothesisReport hyp = hypotheses_impl(inst, seed, dir);
  if (!hyp.passed() && !opts.force) {
    std::string why;
    if (!hyp.monotone) why += " order-optimization mappings are not monotone in the required direction;";
    if (!hyp.values_complete) why += " values are not universally inductive;";
    if (!hyp.seed_condition) why += " seed " + inst.pair_name(seed) + " has no admissible witness;";
    throw Error(ErrorCode::HypothesisFailed, "existence hypotheses fail:" + why);
  }

  SolutionReport report;
  report.direction = dir;
  report.existence_guaranteed = hyp.passed();
  report.hypotheses = hyp;
  report.climb_trace.push_back(seed);

  const std::size_t bound = inst.pair_count();
  Pair p = seed;
  for (;;) {
    std::vector<Pair> admissible;
    for (Pair q : gamma(inst, p.x, p.y))
      if (dir_leq(inst, dir, p, q)) admissible.push_back(q);
    if (admissible.empty()) {
      report.climb_stalled = true;
      break;
    }
    auto strict = std::find_if(admissible.begin(), admissible.end(), [&](Pair q) { return q != p; });
    if (strict == admissible.end()) break;  // only p itself: fixed point
    // gamma() is lexicographic, so the first strict successor is the smallest.
    p = *strict;
    report.climb_trace.push_back(p);
    if (report.climb_trace.size() > bound)
      throw Error(ErrorCode::InvariantBreach, "climb exceeded |C|*|D| steps");
  }

  if (report.climb_stalled && report.existence_guaranteed)
    throw Error(ErrorCode::InvariantBreach, "climb stalled although the hypotheses hold");
  if (!report.climb_stalled && !is_solution(inst, p))
    throw Error(ErrorCode::InvariantBreach, "fixed point " + inst.pair_name(p) + " is not a solution");

  // Promote within S: everything above the climb's end (or above the seed
  // when the climb stalled).
  const Pair anchor = report.climb_stalled ? seed : p;
  std::vector<Pair> candidates;
  for (Pair s : solution_set(inst))
    if (dir_leq(inst, dir, anchor, s)) candidates.push_back(s);
  if (candidates.empty())
    throw Error(ErrorCode::NoSolution, "no solution " + std::string(dir == Direction::ascending ? "above" : "below") +
                                           " seed " + inst.pair_name(seed));

  Pair best = *std::find_if(candidates.begin(), candidates.end(), [&](Pair s) {
    return std::none_of(candidates.begin(), candidates.end(),
                        [&](Pair t) { return t != s && dir_leq(inst, dir, s, t); });
  });
  if (!report.climb_stalled && best != p) report.climb_trace.push_back(best);

  report.solutions = {best};
  report.certificates = {is_solution(inst, best)};
  if (dir == Direction::ascending)
    report.maximal_solution = best;
  else
    report.minimal_solution = best;
  return report;
}

}  // namespace

// ObjectiveMap

ObjectiveMap::ObjectiveMap(Subset c, Subset d, PosetPtr u, std::vector<Element> table)
    : c_(std::move(c)), d_(std::move(d)), u_(std::move(u)), table_(std::move(table)) {
  if (!u_) throw Error(ErrorCode::ValidationError, "objective map needs a utility poset");
  if (table_.size() != c_.size() * d_.size())
    throw Error(ErrorCode::ValidationError, "objective table must have |C|*|D| = " +
                                                std::to_string(c_.size() * d_.size()) + " entries, got " +
                                                std::to_string(table_.size()));
  for (Element v : table_)
    if (v >= u_->size()) throw Error(ErrorCode::ValidationError, "objective value outside the utility poset");
}

Element ObjectiveMap::at(Element x, Element y) const {
  auto i = c_.position(x);
  auto j = d_.position(y);
  if (!i || !j) throw Error(ErrorCode::UnknownElement, "objective evaluated outside C x D");
  return table_[*i * d_.size() + *j];
}

// ProblemInstance

ProblemInstance::ProblemInstance(Subset c, Subset d, PosetPtr u, ObjectiveMap t, SetValuedMap f, SetValuedMap g,
                                 std::optional<Pair> seed)
    : c_(std::move(c)),
      d_(std::move(d)),
      u_(std::move(u)),
      t_(std::move(t)),
      f_(std::move(f)),
      g_(std::move(g)),
      seed_(seed) {
  if (c_.empty()) throw Error(ErrorCode::ValidationError, "C must be nonempty");
  if (d_.empty()) throw Error(ErrorCode::ValidationError, "D must be nonempty");
  if (!u_ || u_->size() == 0) throw Error(ErrorCode::ValidationError, "U must be a nonempty poset");
  if (!(t_.utility() == *u_)) throw Error(ErrorCode::ValidationError, "T takes values in a different utility poset");
  if (!same_ground(f_.domain(), c_) || !same_ground(f_.codomain(), d_))
    throw Error(ErrorCode::ValidationError, "F must map C into subsets of D");
  if (!same_ground(g_.domain(), d_) || !same_ground(g_.codomain(), c_))
    throw Error(ErrorCode::ValidationError, "G must map D into subsets of C");
  if (seed_) require_pair(*seed_);
}

Pair ProblemInstance::pair(std::string_view x, std::string_view y) const {
  Pair p{x_order().index(x), y_order().index(y)};
  require_pair(p);
  return p;
}

void ProblemInstance::require_pair(Pair p) const {
  if (!c_.contains(p.x)) throw Error(ErrorCode::UnknownElement, "element index " + std::to_string(p.x) + " is not in C");
  if (!d_.contains(p.y)) throw Error(ErrorCode::UnknownElement, "element index " + std::to_string(p.y) + " is not in D");
}

std::string ProblemInstance::pair_name(Pair p) const {
  return "(" + x_order().name(p.x) + "," + y_order().name(p.y) + ")";
}

std::vector<Pair> ProblemInstance::pairs() const {
  std::vector<Pair> out;
  out.reserve(pair_count());
  for (Element x : c_)
    for (Element y : d_) out.push_back({x, y});
  return out;
}

ProblemInstance ProblemInstance::with_seed(std::optional<Pair> seed) const {
  ProblemInstance copy = *this;
  if (seed) copy.require_pair(*seed);
  copy.seed_ = seed;
  return copy;
}

// Order-optimization mappings

Subset phi(const ProblemInstance& inst, Element x) {
  require_in(inst.c(), x, "phi");
  return phi_over(inst, x, inst.f().at(x));
}

Subset psi(const ProblemInstance& inst, Element y) {
  require_in(inst.d(), y, "psi");
  return psi_over(inst, y, inst.g().at(y));
}

Subset global_phi(const ProblemInstance& inst, Element x) {
  require_in(inst.c(), x, "global_phi");
  return phi_over(inst, x, inst.d());
}

Subset global_psi(const ProblemInstance& inst, Element y) {
  require_in(inst.d(), y, "global_psi");
  return psi_over(inst, y, inst.c());
}

SetValuedMap phi_map(const ProblemInstance& inst) {
  std::vector<Subset> values;
  values.reserve(inst.c().size());
  for (Element x : inst.c()) values.push_back(phi(inst, x));
  return SetValuedMap(inst.c(), inst.d(), std::move(values));
}

SetValuedMap psi_map(const ProblemInstance& inst) {
  std::vector<Subset> values;
  values.reserve(inst.d().size());
  for (Element y : inst.d()) values.push_back(psi(inst, y));
  return SetValuedMap(inst.d(), inst.c(), std::move(values));
}

std::vector<Pair> gamma(const ProblemInstance& inst, Element x, Element y) {
  const Subset zs = psi(inst, y);
  const Subset us = phi(inst, x);
  std::vector<Pair> out;
  out.reserve(zs.size() * us.size());
  for (Element z : zs)
    for (Element u : us) out.push_back({z, u});
  return out;
}

std::vector<Pair> gamma_fixed_points(const ProblemInstance& inst) {
  const SetValuedMap phis = phi_map(inst);
  const SetValuedMap psis = psi_map(inst);
  std::vector<Pair> out;
  for (Pair p : inst.pairs())
    if (psis.at(p.y).contains(p.x) && phis.at(p.x).contains(p.y)) out.push_back(p);
  return out;
}

// Solution predicate

SolutionCertificate is_solution(const ProblemInstance& inst, Element x, Element y) {
  inst.require_pair({x, y});
  SolutionCertificate cert;
  cert.pair = {x, y};
  const Subset& rows = inst.g().at(y);
  const Subset& cols = inst.f().at(x);
  cert.row_feasible = rows.contains(x);
  cert.column_feasible = cols.contains(y);
  const Poset& u = inst.u();
  const Element v = inst.value(x, y);
  for (Element r : rows) {
    cert.rows_checked.push_back(r);
    if (u.less(v, inst.value(r, y))) cert.row_violators.push_back(r);
  }
  for (Element c : cols) {
    cert.columns_checked.push_back(c);
    if (u.less(inst.value(x, c), v)) cert.column_violators.push_back(c);
  }
  return cert;
}

std::vector<Pair> solution_set(const ProblemInstance& inst) {
  std::vector<Pair> out;
  for (Pair p : inst.pairs())
    if (is_solution(inst, p)) out.push_back(p);
  return out;
}

// Hypotheses

HypothesisReport check_hypotheses(const ProblemInstance& inst, Pair seed) {
  return hypotheses_impl(inst, seed, Direction::ascending);
}

HypothesisReport check_dual_hypotheses(const ProblemInstance& inst, Pair seed) {
  return hypotheses_impl(inst, seed, Direction::descending);
}

std::optional<Pair> find_seed(const ProblemInstance& inst, Direction dir) {
  // Monotonicity and value completeness do not depend on the seed; check once.
  const auto pairs = inst.pairs();
  HypothesisReport first = hypotheses_impl(inst, pairs.front(), dir);
  if (!first.monotone || !first.values_complete) return std::nullopt;
  const SetValuedMap phis = phi_map(inst);
  const SetValuedMap psis = psi_map(inst);
  for (Pair p : pairs) {
    const auto& zs = psis.at(p.y);
    const auto& us = phis.at(p.x);
    bool zx = std::any_of(zs.begin(), zs.end(), [&](Element z) {
      return dir == Direction::ascending ? inst.x_order().leq(p.x, z) : inst.x_order().leq(z, p.x);
    });
    bool uy = std::any_of(us.begin(), us.end(), [&](Element u) {
      return dir == Direction::ascending ? inst.y_order().leq(p.y, u) : inst.y_order().leq(u, p.y);
    });
    if (zx && uy) return p;
  }
  return std::nullopt;
}

// Solver

SolutionReport solve_maximal(const ProblemInstance& inst, Pair seed, SolveOptions opts) {
  return climb(inst, seed, opts, Direction::ascending);
}

SolutionReport solve_minimal(const ProblemInstance& inst, Pair seed, SolveOptions opts) {
  return climb(inst, seed, opts, Direction::descending);
}

SolutionReport enumerate_solutions(const ProblemInstance& inst) {
  SolutionReport r;
  r.solutions = solution_set(inst);
  for (Pair p : r.solutions) r.certificates.push_back(is_solution(inst, p));
  if (!r.solutions.empty()) {
    auto pick = [&](bool maximal) {
      return *std::find_if(r.solutions.begin(), r.solutions.end(), [&](Pair s) {
        return std::none_of(r.solutions.begin(), r.solutions.end(), [&](Pair t) {
          return maximal ? inst.pair_less(s, t) : inst.pair_less(t, s);
        });
      });
    };
    r.maximal_solution = pick(true);
    r.minimal_solution = pick(false);
  }
  return r;
}

bool scalar_saddle_check(const ProblemInstance& inst, Element x, Element y) {
  if (!inst.u().is_total()) throw Error(ErrorCode::UtilityNotTotal, "scalar saddle check needs a totally ordered U");
  inst.require_pair({x, y});
  const Subset& rows = inst.g().at(y);
  const Subset& cols = inst.f().at(x);
  if (!rows.contains(x) || !cols.contains(y)) return false;
  const Poset& u = inst.u();
  Element row_max = inst.value(rows[0], y);
  for (Element r : rows)
    if (u.less(row_max, inst.value(r, y))) row_max = inst.value(r, y);
  Element col_min = inst.value(x, cols[0]);
  for (Element c : cols)
    if (u.less(inst.value(x, c), col_min)) col_min = inst.value(x, c);
  const Element v = inst.value(x, y);
  return row_max == v && v == col_min;
}

// Reductions

ProblemInstance reduce_to_oep(const ProblemInstance& inst, ReduceSide side) {
  SetValuedMap f = side == ReduceSide::g ? inst.f() : SetValuedMap::constant(inst.c(), inst.d());
  SetValuedMap g = side == ReduceSide::f ? inst.g() : SetValuedMap::constant(inst.d(), inst.c());
  return ProblemInstance(inst.c(), inst.d(), inst.utility(), inst.t(), std::move(f), std::move(g), inst.seed());
}

ProblemInstance order_dual(const ProblemInstance& inst) {
  const PosetPtr xd = make_poset(inst.x_order().dual());
  const PosetPtr yd = inst.c().parent() == inst.d().parent() ? xd : make_poset(inst.y_order().dual());
  Subset c = inst.c().rebased(xd);
  Subset d = inst.d().rebased(yd);
  ObjectiveMap t(c, d, inst.utility(), inst.t().table());
  return ProblemInstance(c, d, inst.utility(), std::move(t), inst.f().rebased(xd, yd), inst.g().rebased(yd, xd),
                         inst.seed());
}

}  // namespace roep
