#include <gtest/gtest.h>

#include "deadend/deadend.hpp"

using namespace deadend;

namespace {

const IntMatrix kI2{{1, 0}, {0, 1}};
const IntMatrix kMinusI2{{-1, 0}, {0, -1}};

EuclideanSpec z2_trivial() { return {2, {{ZVec{{1, 0}}, kI2}, {ZVec{{0, 1}}, kI2}}, {}, {}}; }

EuclideanSpec z2_pm() {
  return {2, {{ZVec{{1, 0}}, kI2}, {ZVec{{0, 1}}, kI2}, {ZVec{{0, 0}}, kMinusI2}}, {}, {}};
}

bool contains_gen(const WeightedGenSet& ws, const ZVec& v, long long w) {
  for (const auto& g : ws.gens) {
    if ((g.v == v || g.v == -v) && g.w == w) return true;
  }
  return false;
}

}  // namespace

TEST(EuclideanGroup, PointGroupClosure) {
  EXPECT_EQ(EuclideanGroup(z2_trivial()).index(), 1u);
  EXPECT_EQ(EuclideanGroup(z2_pm()).index(), 2u);
  // rotation by 90 degrees: p4
  EuclideanSpec p4{2, {{ZVec{{1, 0}}, kI2}, {ZVec{{0, 0}}, {{0, -1}, {1, 0}}}}, {}, {}};
  EXPECT_EQ(EuclideanGroup(p4).index(), 4u);
}

TEST(EuclideanGroup, InfinitePointGroupRejected) {
  EuclideanSpec shear{2, {{ZVec{{1, 0}}, kI2}, {ZVec{{0, 0}}, {{1, 1}, {0, 1}}}}, {}, {}};
  try {
    EuclideanGroup g(shear);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEuclidean);
  }
}

TEST(EuclideanGroup, MultiplicationIsAffineComposition) {
  EuclideanGroup E(z2_pm());
  const auto alpha = E.alphabet();
  // s a s = a^{-1}
  const auto x = evaluate(E, alpha.parse("c a c"));
  EXPECT_EQ(x, evaluate(E, alpha.parse("a-")));
  EXPECT_EQ(evaluate(E, alpha.parse("c c")), E.identity());
}

TEST(EuclideanReduce, TrivialPointGroupIsStandard) {
  const auto red = euclidean_reduce(EuclideanGroup(z2_trivial()));
  ASSERT_EQ(red.ws.gens.size(), 2u);
  EXPECT_TRUE(contains_gen(red.ws, ZVec{{1, 0}}, 1));
  EXPECT_TRUE(contains_gen(red.ws, ZVec{{0, 1}}, 1));
  EXPECT_EQ(red.D, 0);
}

TEST(EuclideanReduce, PlusMinusIdentity) {
  const auto red = euclidean_reduce(EuclideanGroup(z2_pm()));
  EXPECT_TRUE(contains_gen(red.ws, ZVec{{1, 0}}, 1));
  EXPECT_TRUE(contains_gen(red.ws, ZVec{{0, 1}}, 1));
  for (const auto& g : red.ws.gens) {
    EXPECT_FALSE(g.v.is_zero());
    EXPECT_GE(g.w, 1);
  }
  // the coset words are the empty word and s
  EXPECT_EQ(red.D, 2);
  std::vector<ZVec> vs;
  for (const auto& g : red.ws.gens) vs.push_back(g.v);
  EXPECT_TRUE(generates_lattice(2, vs));
}

TEST(EuclideanReduce, ReducedSetGeneratesByReachability) {
  const auto red = euclidean_reduce(EuclideanGroup(z2_pm()));
  WeightedZn Z(red.ws);
  const auto b = ball(Z, 6);
  for (long long x = -2; x <= 2; ++x)
    for (long long y = -2; y <= 2; ++y) EXPECT_TRUE(b.contains(ZVec{{x, y}}));
}

TEST(Sandwich, TrivialPointGroupHasZeroGap) {
  const auto rep = sandwich_check(EuclideanGroup(z2_trivial()), 8);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.observed_D, 0);
}

TEST(Sandwich, PlusMinusIdentity) {
  const auto rep = sandwich_check(EuclideanGroup(z2_pm()), 8);
  EXPECT_TRUE(rep.ok());
  EXPECT_GT(rep.checked, 0u);
  EXPECT_LE(rep.observed_D, rep.formula_D);
}

TEST(Sandwich, RotationGroup) {
  EuclideanSpec p4{2, {{ZVec{{1, 0}}, kI2}, {ZVec{{0, 0}}, {{0, -1}, {1, 0}}}}, {}, {}};
  const auto rep = sandwich_check(EuclideanGroup(p4), 9);
  EXPECT_TRUE(rep.ok());
  EXPECT_LE(rep.observed_D, rep.formula_D);
}

TEST(Sandwich, ZeroTranslationBothSidesZero) {
  EuclideanGroup E(z2_pm());
  const auto red = euclidean_reduce(E);
  WeightedZn Z(red.ws);
  EXPECT_EQ(*ball(E, 0).find(E.identity()), 0);
  EXPECT_EQ(weighted_distance(red.ws, ZVec{{0, 0}}), 0);
}
