#include <gtest/gtest.h>

#include <random>

#include "roep/generators.hpp"
#include "roep/order_maps.hpp"
#include "test_support.hpp"

using namespace roep;
using namespace roep::test;

namespace {

SetValuedMap i2_f() { return i2().f(); }

SetValuedMap global_phi_map(const ProblemInstance& inst) {
  std::vector<Subset> values;
  for (Element x : inst.c()) values.push_back(global_phi(inst, x));
  return SetValuedMap(inst.c(), inst.d(), std::move(values));
}

SetValuedMap random_map(std::mt19937_64& rng, const Subset& dom, const Subset& cod, bool singleton) {
  std::vector<Subset> values;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    std::vector<Element> m;
    if (!singleton)
      for (Element e : cod)
        if (rng() & 1) m.push_back(e);
    if (m.empty()) m.push_back(cod[rng() % cod.size()]);
    values.emplace_back(cod.parent(), m);
  }
  return SetValuedMap(dom, cod, std::move(values));
}

PosetPtr random_poset(std::uint64_t seed, std::size_t n) {
  GenSpec spec;
  spec.kind = GenKind::random_poset;
  spec.sizes = {n};
  spec.rng_seed = seed;
  spec.density = 0.4;
  return make_poset(gen_poset(spec));
}

}  // namespace

TEST(Monotonicity, I2ConstraintIsIncreasing) {
  // Only comparable pair is c0 <= c1: d0 in F(c0) is bounded by d0 in F(c1),
  // and each of d0, d1 in F(c1) dominates d0 in F(c0).
  MonotonicityReport r = monotonicity_report(i2_f());
  EXPECT_TRUE(r.increasing_upward);
  EXPECT_TRUE(r.increasing_downward);
  EXPECT_TRUE(r.increasing);
  EXPECT_FALSE(r.single_valued.has_value());
}

TEST(Monotonicity, ConstantMapHasEveryFlag) {
  ProblemInstance inst = i1();
  MonotonicityReport r = monotonicity_report(SetValuedMap::constant(inst.c(), inst.d()));
  EXPECT_TRUE(r.increasing_upward && r.increasing_downward && r.increasing);
  EXPECT_TRUE(r.decreasing_upward && r.decreasing_downward && r.decreasing);
}

TEST(Monotonicity, MatchingPenniesArgminIsNotIncreasing) {
  // Global argmin for I3: Phi(c0) = {d1}, Phi(c1) = {d0}; d1 has no upper bound in {d0}.
  ProblemInstance inst = i3();
  SetValuedMap m = global_phi_map(inst);
  EXPECT_EQ(names(m.at(0)), std::vector<std::string>{"d1"});
  EXPECT_EQ(names(m.at(1)), std::vector<std::string>{"d0"});
  MonotonicityReport r = monotonicity_report(m);
  EXPECT_FALSE(r.increasing_upward);
  ASSERT_TRUE(r.single_valued.has_value());
  EXPECT_FALSE(r.single_valued->increasing);
  EXPECT_TRUE(r.single_valued->strictly_decreasing);
}

TEST(Monotonicity, StrictnessForSingleValuedMaps) {
  PosetPtr c = chain("c", 3);
  PosetPtr d = chain("d", 3);
  Subset sc = Subset::all(c), sd = Subset::all(d);
  SetValuedMap identity(sc, sd, {Subset(d, {0}), Subset(d, {1}), Subset(d, {2})});
  auto r = monotonicity_report(identity);
  ASSERT_TRUE(r.single_valued);
  EXPECT_TRUE(r.single_valued->strictly_increasing);
  SetValuedMap flat(sc, sd, {Subset(d, {0}), Subset(d, {1}), Subset(d, {1})});
  auto f = monotonicity_report(flat);
  EXPECT_TRUE(f.single_valued->increasing);
  EXPECT_FALSE(f.single_valued->strictly_increasing);
}

TEST(Constant, Detection) {
  ProblemInstance inst = i1();
  auto value = constant_value(SetValuedMap::constant(inst.c(), inst.d()));
  ASSERT_TRUE(value.has_value());
  EXPECT_EQ(*value, inst.d());
  EXPECT_FALSE(is_constant(i2_f()));
  PosetPtr one = chain("o", 1);
  SetValuedMap single(Subset::all(one), inst.d(), {Subset(inst.d().parent(), {1})});
  EXPECT_TRUE(is_constant(single));
}

TEST(SetValuedMapValidation, RejectsEmptyAndForeignImages) {
  ProblemInstance inst = i1();
  expect_error(ErrorCode::ValidationError, [&] {
    SetValuedMap(inst.c(), inst.d(), {Subset(inst.d().parent(), {}), Subset(inst.d().parent(), {0})});
  });
  expect_error(ErrorCode::ValidationError, [&] { SetValuedMap(inst.c(), inst.d(), {Subset(inst.d().parent(), {0})}); });
  Subset d0(inst.d().parent(), {0});
  expect_error(ErrorCode::ValidationError, [&] {
    SetValuedMap(inst.c(), d0, {Subset(inst.d().parent(), {1}), Subset(inst.d().parent(), {0})});
  });
  expect_error(ErrorCode::UnknownElement, [&] { (void)i2_f().at(9); });
}

// Properties over random maps between random posets.

TEST(MonotonicityProperties, SingleValuedFlagsAgree) {
  std::mt19937_64 rng(11);
  for (std::uint64_t s = 0; s < 300; ++s) {
    PosetPtr x = random_poset(s, 1 + s % 5);
    PosetPtr y = random_poset(s + 1000, 1 + (s / 5) % 5);
    SetValuedMap m = random_map(rng, Subset::all(x), Subset::all(y), true);
    auto r = monotonicity_report(m);
    ASSERT_TRUE(r.single_valued);
    EXPECT_EQ(r.increasing_upward, r.increasing_downward) << s;
    EXPECT_EQ(r.increasing_upward, r.single_valued->increasing) << s;
    EXPECT_EQ(r.decreasing_upward, r.single_valued->decreasing) << s;
  }
}

TEST(MonotonicityProperties, DecreasingIsIncreasingIntoTheDual) {
  std::mt19937_64 rng(5);
  for (std::uint64_t s = 0; s < 300; ++s) {
    PosetPtr x = random_poset(s, 1 + s % 5);
    PosetPtr y = random_poset(s + 77, 1 + (s / 3) % 5);
    SetValuedMap m = random_map(rng, Subset::all(x), Subset::all(y), false);
    PosetPtr ydual = make_poset(y->dual());
    SetValuedMap md = m.rebased(x, ydual);
    auto r = monotonicity_report(m);
    auto rd = monotonicity_report(md);
    EXPECT_EQ(r.decreasing_upward, rd.increasing_upward) << s;
    EXPECT_EQ(r.decreasing_downward, rd.increasing_downward) << s;
  }
}

TEST(MonotonicityProperties, ConstantMapsSatisfyAllFlags) {
  std::mt19937_64 rng(9);
  for (std::uint64_t s = 0; s < 100; ++s) {
    PosetPtr x = random_poset(s, 1 + s % 6);
    PosetPtr y = random_poset(s + 5, 1 + (s / 2) % 6);
    Subset value = random_map(rng, Subset::all(y), Subset::all(y), false).values().front();
    auto r = monotonicity_report(SetValuedMap::constant(Subset::all(x), Subset::all(y), value));
    EXPECT_TRUE(r.increasing && r.decreasing) << s;
  }
}
