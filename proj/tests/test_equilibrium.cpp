#include <gtest/gtest.h>

#include "roep/equilibrium.hpp"
#include "test_support.hpp"

using namespace roep;
using namespace roep::test;

using Names = std::vector<std::string>;

TEST(Phi, ExamplesFromTheCanonicalInstances) {
  // I1: T(c0, .) = {0, -1}, minimum at d1.
  ProblemInstance a = i1();
  EXPECT_EQ(names(phi(a, 0)), Names{"d1"});
  // I2: F(c0) = {d0}.
  ProblemInstance b = i2();
  EXPECT_EQ(names(phi(b, 0)), Names{"d0"});
  expect_error(ErrorCode::UnknownElement, [&] { phi(a, 5); });
}

TEST(Phi, AntichainUtilityKeepsWholeFeasibleSet) {
  // Every image incomparable: all feasible columns are minimal.
  PosetPtr u = antichain("u", 2);
  PosetPtr x = chain("c", 2), y = chain("d", 2);
  Subset c = Subset::all(x), d = Subset::all(y);
  ObjectiveMap t(c, d, u, {0, 1, 1, 0});
  ProblemInstance inst(c, d, u, t, SetValuedMap::constant(c, d), SetValuedMap::constant(d, c));
  EXPECT_EQ(phi(inst, 0), d);
  EXPECT_EQ(psi(inst, 1), c);
}

TEST(Psi, ExamplesFromTheCanonicalInstances) {
  EXPECT_EQ(names(psi(i1(), 0)), Names{"c1"});  // max of {0, 1}
  EXPECT_EQ(names(psi(i2(), 1)), Names{"c1"});  // G(d1) = {c1}
  EXPECT_EQ(names(global_psi(i3(), 0)), Names{"c0"});  // max of {1, -1}
}

TEST(GlobalMaps, Examples) {
  ProblemInstance a = i1();
  for (Element x : a.c()) EXPECT_EQ(global_phi(a, x), phi(a, x));
  for (Element y : a.d()) EXPECT_EQ(global_psi(a, y), psi(a, y));
  ProblemInstance b = i2();
  EXPECT_EQ(names(global_phi(b, 0)), Names{"d1"});
  EXPECT_EQ(names(phi(b, 0)), Names{"d0"});
  EXPECT_EQ(names(global_phi(i3(), 1)), Names{"d0"});
}

TEST(Gamma, Examples) {
  ProblemInstance b = i2();
  EXPECT_EQ(pair_names(b, gamma(b, 0, 0)), Names{"(c1,d0)"});
  ProblemInstance a = i1();
  for (Pair p : a.pairs()) EXPECT_EQ(pair_names(a, gamma(a, p.x, p.y)), Names{"(c1,d1)"});
  ProblemInstance c = i3();
  EXPECT_EQ(pair_names(c, gamma(c, 0, 0)), Names{"(c0,d1)"});
}

TEST(IsSolution, Examples) {
  ProblemInstance a = i1();
  auto yes = is_solution(a, P(a, "c1", "d1"));
  EXPECT_TRUE(yes.holds());
  EXPECT_EQ(yes.rows_checked.size(), 2u);
  EXPECT_EQ(yes.columns_checked.size(), 2u);

  auto no = is_solution(a, P(a, "c0", "d1"));
  EXPECT_FALSE(no.holds());
  EXPECT_EQ(no.row_violators, std::vector<Element>{1});  // T(c1,d1) = 0 > -1

  ProblemInstance b = i2();
  auto infeasible = is_solution(b, P(b, "c0", "d1"));
  EXPECT_FALSE(infeasible.row_feasible);  // c0 not in G(d1) = {c1}
  EXPECT_FALSE(infeasible.holds());
}

TEST(SolutionSet, CanonicalInstances) {
  ProblemInstance a = i1(), b = i2(), c = i3();
  EXPECT_EQ(pair_names(a, solution_set(a)), Names{"(c1,d1)"});
  EXPECT_EQ(pair_names(b, solution_set(b)), Names{"(c1,d1)"});
  EXPECT_TRUE(solution_set(c).empty());
  for (const auto* inst : {&a, &b, &c}) {
    EXPECT_EQ(solution_set(*inst), oracle_solutions(*inst));
    EXPECT_EQ(solution_set(*inst), gamma_fixed_points(*inst));
  }
}

TEST(Hypotheses, I2SeedBottom) {
  ProblemInstance b = i2();
  HypothesisReport h = check_hypotheses(b, P(b, "c0", "d0"));
  EXPECT_TRUE(h.phi.increasing_upward);
  EXPECT_TRUE(h.psi.increasing_upward);
  EXPECT_TRUE(h.values_complete);
  EXPECT_TRUE(h.seed_condition);
  EXPECT_TRUE(h.passed());
  EXPECT_EQ(b.x_order().name(*h.witness_z), "c1");
  EXPECT_EQ(b.y_order().name(*h.witness_u), "d0");
}

TEST(Hypotheses, I1SeedBottom) {
  ProblemInstance a = i1();
  HypothesisReport h = check_hypotheses(a, P(a, "c0", "d0"));
  EXPECT_TRUE(h.passed());
  EXPECT_EQ(a.x_order().name(*h.witness_z), "c1");
  EXPECT_EQ(a.y_order().name(*h.witness_u), "d1");
}

TEST(Hypotheses, MatchingPenniesFailsMonotonicityEverywhere) {
  ProblemInstance c = i3();
  for (Pair p : c.pairs()) {
    HypothesisReport h = check_hypotheses(c, p);
    EXPECT_FALSE(h.phi.increasing_upward);
    EXPECT_FALSE(h.passed());
  }
  EXPECT_FALSE(find_seed(c).has_value());
}

TEST(Hypotheses, SeedOutsideDomain) {
  ProblemInstance a = i1();
  expect_error(ErrorCode::UnknownElement, [&] { check_hypotheses(a, Pair{4, 0}); });
}

TEST(SolveMaximal, I2ClimbTrace) {
  ProblemInstance b = i2();
  SolutionReport r = solve_maximal(b, P(b, "c0", "d0"));
  ASSERT_TRUE(r.maximal_solution);
  EXPECT_EQ(b.pair_name(*r.maximal_solution), "(c1,d1)");
  EXPECT_EQ(pair_names(b, r.climb_trace), (Names{"(c0,d0)", "(c1,d0)", "(c1,d1)"}));
  EXPECT_TRUE(r.existence_guaranteed);
  EXPECT_FALSE(r.climb_stalled);
  ASSERT_EQ(r.certificates.size(), 1u);
  EXPECT_TRUE(r.certificates[0].holds());
}

TEST(SolveMaximal, I1) {
  ProblemInstance a = i1();
  EXPECT_EQ(a.pair_name(*solve_maximal(a, P(a, "c0", "d0")).maximal_solution), "(c1,d1)");
}

TEST(SolveMaximal, MatchingPenniesRefusesThenFindsNothing) {
  ProblemInstance c = i3();
  expect_error(ErrorCode::HypothesisFailed, [&] { solve_maximal(c, P(c, "c0", "d0")); });
  expect_error(ErrorCode::NoSolution, [&] { solve_maximal(c, P(c, "c0", "d0"), {.force = true}); });
}

TEST(SolveMinimal, ConstantObjective) {
  ProblemInstance k = int_instance(chain("c", 2), chain("d", 2), {{0, 0}, {0, 0}});
  EXPECT_EQ(solution_set(k).size(), 4u);
  SolutionReport r = solve_minimal(k, P(k, "c1", "d1"));
  ASSERT_TRUE(r.minimal_solution);
  EXPECT_EQ(k.pair_name(*r.minimal_solution), "(c0,d0)");
  for (std::size_t i = 1; i < r.climb_trace.size(); ++i)
    EXPECT_TRUE(k.pair_less(r.climb_trace[i], r.climb_trace[i - 1]));
}

TEST(SolveMinimal, UniqueSolutions) {
  ProblemInstance a = i1();
  EXPECT_EQ(a.pair_name(*solve_minimal(a, P(a, "c1", "d1")).minimal_solution), "(c1,d1)");
  ProblemInstance b = i2();
  EXPECT_EQ(b.pair_name(*solve_minimal(b, P(b, "c1", "d1")).minimal_solution), "(c1,d1)");
}

TEST(SolveMinimal, AgreesWithMaximalOnOrderDual) {
  ProblemInstance k = int_instance(chain("c", 3), chain("d", 2), {{0, 1}, {0, 1}, {2, 2}});
  for (Pair seed : k.pairs()) {
    bool ok = check_dual_hypotheses(k, seed).passed();
    EXPECT_EQ(ok, check_hypotheses(order_dual(k), seed).passed());
    if (!ok) continue;
    EXPECT_EQ(solve_minimal(k, seed).minimal_solution, solve_maximal(order_dual(k), seed).maximal_solution);
  }
}

TEST(ScalarSaddle, Examples) {
  ProblemInstance a = i1();
  EXPECT_TRUE(scalar_saddle_check(a, 1, 1));  // max{-1, 0} = 0 = min{1, 0}
  EXPECT_FALSE(scalar_saddle_check(a, 0, 0));  // max{0, 1} = 1
  ProblemInstance c = i3();
  for (Pair p : c.pairs()) EXPECT_FALSE(scalar_saddle_check(c, p.x, p.y));
}

TEST(ScalarSaddle, RequiresTotalUtility) {
  PosetPtr u = antichain("u", 2);
  PosetPtr x = chain("c", 2), y = chain("d", 2);
  Subset c = Subset::all(x), d = Subset::all(y);
  ProblemInstance inst(c, d, u, ObjectiveMap(c, d, u, {0, 1, 1, 0}), SetValuedMap::constant(c, d),
                       SetValuedMap::constant(d, c));
  expect_error(ErrorCode::UtilityNotTotal, [&] { scalar_saddle_check(inst, 0, 0); });
}

TEST(Reduce, BothSidesOfI2) {
  ProblemInstance r = reduce_to_oep(i2());
  EXPECT_EQ(pair_names(r, solution_set(r)), Names{"(c1,d1)"});
  EXPECT_EQ(names(global_phi(r, 0)), Names{"d1"});
  for (Element x : r.c()) EXPECT_EQ(phi(r, x), global_phi(r, x));
  for (Element y : r.d()) EXPECT_EQ(psi(r, y), global_psi(r, y));
}

TEST(Reduce, I1IsAlreadyUnconstrained) {
  ProblemInstance a = i1();
  ProblemInstance r = reduce_to_oep(a);
  for (Pair p : a.pairs()) EXPECT_EQ(gamma(a, p.x, p.y), gamma(r, p.x, p.y));
  EXPECT_EQ(solution_set(a), solution_set(r));
}

TEST(Reduce, OneSided) {
  ProblemInstance b = i2();
  ProblemInstance r = reduce_to_oep(b, ReduceSide::g);
  for (Element y : r.d()) EXPECT_EQ(psi(r, y), global_psi(r, y));
  EXPECT_EQ(r.f().values(), b.f().values());
}

TEST(InstanceValidation, Errors) {
  PosetPtr x = chain("c", 2), y = chain("d", 2);
  Subset c = Subset::all(x), d = Subset::all(y);
  PosetPtr u = chain("u", 1);
  expect_error(ErrorCode::ValidationError, [&] { ObjectiveMap(c, d, u, {0, 0, 0}); });
  expect_error(ErrorCode::ValidationError, [&] { ObjectiveMap(c, d, u, {0, 0, 0, 3}); });
  ObjectiveMap t(c, d, u, {0, 0, 0, 0});
  expect_error(ErrorCode::ValidationError, [&] {
    ProblemInstance(Subset(x, {}), d, u, t, SetValuedMap::constant(c, d), SetValuedMap::constant(d, c));
  });
  expect_error(ErrorCode::ValidationError, [&] {
    ProblemInstance(c, d, u, t, SetValuedMap::constant(d, c), SetValuedMap::constant(d, c));
  });
}
