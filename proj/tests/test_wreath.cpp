#include <gtest/gtest.h>

#include "deadend/deadend.hpp"
#include "support.hpp"

using namespace deadend;

namespace {

SupportVector lamp(int g, long long pos, long long c = 1) {
  SupportVector v;
  v[g].add_term(pos, c);
  return v;
}

}  // namespace

TEST(Wreath, Multiplication) {
  WreathZ2Z W;
  const auto alpha = W.alphabet();
  const auto e = evaluate(W, alpha.parse("c c a c- b b"));
  EXPECT_EQ(e.cursor, 1);
  ASSERT_EQ(e.lamps.size(), 2u);
  EXPECT_EQ(e.lamps[0], (WreathElement::Lamp{1, 0, 2}));
  EXPECT_EQ(e.lamps[1], (WreathElement::Lamp{2, 1, 0}));
  EXPECT_EQ(evaluate(W, alpha.parse("a c b c- a- c b- c-")), W.identity());
}

TEST(Wreath, Configuration) {
  SupportVector v = lamp(0, 2);
  v[1].add_term(-1, 3);
  const auto e = wreath_configuration(v, 4);
  EXPECT_EQ(e.cursor, 4);
  ASSERT_EQ(e.lamps.size(), 2u);
  EXPECT_EQ(e.lamps[0], (WreathElement::Lamp{-1, 0, 3}));
  EXPECT_EQ(e.lamps[1], (WreathElement::Lamp{2, 1, 0}));
}

TEST(WreathOracle, Examples) {
  EXPECT_EQ(wreath_oracle({}, 0, 10), 0);
  EXPECT_EQ(wreath_oracle({}, 5, 10), 5);
  EXPECT_EQ(wreath_oracle(lamp(0, 0), 0, 10), 1);
  EXPECT_EQ(wreath_oracle(lamp(0, 2), 0, 10), 5);
  SupportVector v = lamp(0, 0);
  v[1].add_term(-1, 1);
  EXPECT_EQ(wreath_oracle(v, 3, 12), 7);
}

TEST(WreathOracle, CapExceeded) {
  try {
    wreath_oracle(lamp(0, 6), 0, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(WreathOracle, AgreesWithPlainBreadthFirstSearch) {
  // A* against the generic BFS ball: both must give the same distances.
  WreathZ2Z W;
  const auto b = ball(W, 6);
  for (std::size_t i = 0; i < b.size(); i += 7) {
    EXPECT_EQ(wreath_distance(b.elements()[i], 6), b.distance_at(i)) << W.render(b.elements()[i]);
  }
}

TEST(LlLength, Examples) {
  EXPECT_EQ(ll_length({}, 5), 5);
  EXPECT_EQ(ll_length({}, -3), 3);
  EXPECT_EQ(ll_length(lamp(0, 2), 0), 5);
  SupportVector v = lamp(0, 0);
  v[1].add_term(-1, 1);
  EXPECT_EQ(ll_length(v, 3), 7);
}

TEST(LlLength, MatchesWreathOracleOnSmallConfigurations) {
  // up to two letters here; the acceptance run covers three
  std::vector<std::pair<int, long long>> slots;
  for (int g = 0; g < 2; ++g)
    for (long long s = -2; s <= 2; ++s) slots.push_back({g, s});
  std::size_t cases = 0;
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = i; j <= slots.size(); ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1})
          for (long long z = -3; z <= 3; ++z) {
            SupportVector v;
            v[slots[i].first].add_term(slots[i].second, si);
            if (j < slots.size()) v[slots[j].first].add_term(slots[j].second, sj);
            const long long ll = ll_length(v, z);
            ASSERT_EQ(wreath_oracle(v, z, ll), ll) << v.render() << " z=" << z;
            ++cases;
          }
  EXPECT_GT(cases, 1000u);
}
