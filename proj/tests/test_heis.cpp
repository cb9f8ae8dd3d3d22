#include <gtest/gtest.h>

#include "deadend/deadend.hpp"
#include "support.hpp"

using namespace deadend;

namespace {

const GenAlphabet kAB = GenAlphabet::standard(2);

/// Twice the signed area of a closed lattice path, via the sum of x dy.
long long twice_green_area(const Word& w) {
  long long x = 0, y = 0, twice = 0;
  for (Letter l : w) {
    if (l.gen == 0) {
      x += l.sign;
    } else {
      // x dy - y dx with dx = 0 on vertical steps, doubled and exact
      twice += 2 * x * l.sign;
      y += l.sign;
    }
  }
  return twice;
}

/// Every word over {a, a-, b, b-} of length <= max_len.
template <class F>
void for_each_word(std::size_t max_len, F&& f) {
  Word w;
  std::function<void()> rec = [&] {
    f(w);
    if (w.size() == max_len) return;
    for (int c = 0; c < 4; ++c) {
      w.push_back(Letter::from_code(c));
      rec();
      w.pop_back();
    }
  };
  rec();
}

}  // namespace

TEST(HeisStep, Examples) {
  EXPECT_EQ(heis_step({}, kA), (HeisElement{1, 0, 0}));
  EXPECT_EQ(heis_step({0, 1, 0}, kA), (HeisElement{1, 1, -1}));
  EXPECT_EQ(evaluate(Heisenberg{}, commutator_word()), (HeisElement{0, 0, 1}));
  EXPECT_EQ(heis_step({2, 3, 4}, kAinv), (HeisElement{1, 3, 7}));
  EXPECT_EQ(heis_step({2, 3, 4}, kBinv), (HeisElement{2, 2, 4}));
}

TEST(HeisMul, IdentityAndExample) {
  const HeisElement e{3, -2, 7};
  EXPECT_EQ(heis_mul(e, {}), e);
  EXPECT_EQ(heis_mul({}, e), e);
  EXPECT_EQ(heis_mul({0, 1, 0}, {1, 0, 0}), (HeisElement{1, 1, -1}));
  EXPECT_EQ(heis_mul(e, heis_inverse(e)), HeisElement{});
}

TEST(HeisMul, AgreesWithLetterEvaluationAndIsAssociative) {
  Heisenberg H;
  auto r = testsupport::rng(30);
  for (int t = 0; t < 500; ++t) {
    Word u = testsupport::random_word(r, 2, 9), v = testsupport::random_word(r, 2, 9),
         w = testsupport::random_word(r, 2, 9);
    const auto x = evaluate(H, u), y = evaluate(H, v), z = evaluate(H, w);
    EXPECT_EQ(heis_mul(x, y), evaluate(H, concat(u, v)));
    EXPECT_EQ(heis_mul(heis_mul(x, y), z), heis_mul(x, heis_mul(y, z)));
  }
}

TEST(WordArea, Examples) {
  EXPECT_EQ(word_area_normal({}), HeisElement{});
  EXPECT_EQ(word_area_normal(commutator_word()), (HeisElement{0, 0, 1}));
  EXPECT_EQ(word_area_normal(kAB.parse("a- a- a- b- a b- a a b b")), (HeisElement{0, 0, 5}));
}

TEST(WordArea, MatchesStepEvaluationOnAllShortWords) {
  Heisenberg H;
  std::size_t count = 0;
  for_each_word(10, [&](const Word& w) {
    ++count;
    const auto e = evaluate(H, w);
    ASSERT_EQ(word_area_normal(w), e) << kAB.render(w);
    if (e.i == 0 && e.j == 0) {
      // closed loop: the central coordinate is its enclosed signed area
      ASSERT_EQ(twice_green_area(w), 2 * e.k) << kAB.render(w);
    }
  });
  EXPECT_EQ(count, 1398101u);  // (4^11 - 1) / 3
}

TEST(LatticePath, UnitStepsFromOrigin) {
  auto r = testsupport::rng(31);
  for (int t = 0; t < 100; ++t) {
    Word w = testsupport::random_word(r, 2, 12);
    const auto path = lattice_path(w);
    ASSERT_EQ(path.size(), w.size() + 1);
    EXPECT_EQ(path[0][0], 0);
    EXPECT_EQ(path[0][1], 0);
    for (std::size_t s = 1; s < path.size(); ++s) {
      EXPECT_EQ(std::llabs(path[s][0] - path[s - 1][0]) + std::llabs(path[s][1] - path[s - 1][1]), 1);
    }
  }
}

TEST(NormalForm, RoundTrip) {
  Heisenberg H;
  for (long long i = -3; i <= 3; ++i)
    for (long long j = -3; j <= 3; ++j)
      for (long long k = -5; k <= 5; ++k) EXPECT_EQ(evaluate(H, normal_form_word({i, j, k})), (HeisElement{i, j, k}));
}

TEST(DdWitness, Examples) {
  const auto w2 = dd_witness(2);
  EXPECT_EQ(kAB.render(w2), "a- a- a- b- a b- a a b b");
  EXPECT_EQ(w2.size(), 10u);
  EXPECT_EQ(word_area_normal(w2), (HeisElement{0, 0, 5}));
  const auto w1 = dd_witness(1);
  EXPECT_EQ(w1.size(), 6u);
  EXPECT_EQ(evaluate(Heisenberg{}, w1), (HeisElement{0, 0, 2}));
  for (long long n = 1; n <= 8; ++n) {
    EXPECT_EQ(static_cast<long long>(dd_witness(n).size()), 4 * n + 2);
    EXPECT_EQ(evaluate(Heisenberg{}, dd_witness(n)), dd_element(n));
  }
}

TEST(DdWitness, DistanceIsExactlyFourNPlusTwo) {
  Heisenberg H;
  const auto b = ball(H, 14);
  for (long long n = 1; n <= 3; ++n) {
    const auto d = distance(H, dd_element(n), b);
    EXPECT_EQ(d, 4 * n + 2);
    EXPECT_EQ(d % 2, 0);
  }
}

TEST(NdWitness, Examples) {
  Heisenberg H;
  const auto w = nd_witness(0, 0, 5, 2);
  EXPECT_EQ(kAB.render(w), "b- b- a a b a b a- a- a-");
  EXPECT_EQ(evaluate(H, w), (HeisElement{0, 0, 5}));
  EXPECT_LE(w.size(), 10u);
  EXPECT_TRUE(nd_witness(0, 0, 0, 3).empty());
  const auto w2 = nd_witness(1, 1, 3, 2);
  EXPECT_EQ(evaluate(H, w2), (HeisElement{1, 1, 3}));
  EXPECT_LE(w2.size(), 10u);
}

TEST(NdWitness, OutOfBox) {
  try {
    nd_witness(2, 0, 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfBox);
  }
}

TEST(NdWitness, CoversWholeBoxAndOracleAgrees) {
  Heisenberg H;
  for (long long n = 2; n <= 3; ++n) {
    const auto b = ball(H, 4 * n + 2);
    for (long long i = -n + 1; i < n; ++i)
      for (long long j = -n + 1; j < n; ++j)
        for (long long k = -n * (n + 1) + 1; k < n * (n + 1); ++k) {
          const auto w = nd_witness(i, j, k, n);
          EXPECT_EQ(evaluate(H, w), (HeisElement{i, j, k}));
          EXPECT_LE(static_cast<long long>(w.size()), 4 * n + 2);
          auto d = b.find({i, j, k});
          ASSERT_TRUE(d);
          EXPECT_LE(*d, static_cast<long long>(w.size()));
        }
  }
}

TEST(NhBox, Examples) {
  EXPECT_EQ(nh_check(0, 2).checked, 1u);
  EXPECT_TRUE(nh_check(0, 2).outside.empty());
  const auto two = nh_check(2, 2);
  EXPECT_LE(two.checked, 25u);
  EXPECT_TRUE(two.outside.empty());
  EXPECT_EQ(nh_box(1, 3).k_bound(), 10);
  EXPECT_EQ(nh_box(2, 2).k_bound(), 6);
  for (long long n = 2; n <= 4; ++n)
    for (long long m = 0; m <= 3; ++m) EXPECT_TRUE(nh_check(m, n).outside.empty()) << n << " " << m;
}

TEST(Symmetry, AutomorphismsPreserveDistance) {
  Heisenberg H;
  const auto b = ball(H, 10);
  for (const auto& e : b.elements()) {
    // a -> b, b -> a^{-1}
    const HeisElement rot{-e.j, e.i, e.k + e.i * e.j};
    // b -> b^{-1}
    const HeisElement refl{e.i, -e.j, -e.k};
    EXPECT_EQ(b.find(rot), b.find(e));
    EXPECT_EQ(b.find(refl), b.find(e));
  }
}

TEST(Symmetry, RotationFormulaMatchesLetterMap) {
  Heisenberg H;
  auto r = testsupport::rng(32);
  for (int t = 0; t < 300; ++t) {
    Word w = testsupport::random_word(r, 2, 10);
    Word rotated;
    for (Letter l : w) rotated.push_back(l.gen == 0 ? Letter{1, l.sign} : Letter{0, -l.sign});
    const auto e = evaluate(H, w);
    EXPECT_EQ(evaluate(H, rotated), (HeisElement{-e.j, e.i, e.k + e.i * e.j}));
  }
}

TEST(Family, DepthBoundValues) {
  EXPECT_EQ(heis_depth_bound(3), 3);
  EXPECT_EQ(heis_depth_bound(4), 3);
  EXPECT_EQ(heis_depth_bound(5), 4);
  EXPECT_EQ(heis_depth_bound(6), 4);
  EXPECT_EQ(heis_depth_bound(7), 5);  // sqrt(10)+1 = 4.16
  for (long long n = 3; n <= 60; ++n) {
    const long double exact = std::sqrt(static_cast<long double>(2 * n - 4)) + 1;
    EXPECT_EQ(heis_depth_bound(n), static_cast<long long>(std::ceil(exact - 1e-12L)));
  }
}

TEST(Family, BoxBoundNeverExceedsTrueDepth) {
  for (long long n = 3; n <= 40; ++n) {
    // the box argument needs m < n and m(m-1) < 2n-2 for m = bound-1
    const long long m = heis_box_depth_bound(n) - 1;
    EXPECT_LT(m, n);
    EXPECT_LT(m * (m - 1), 2 * n - 2);
  }
}

TEST(Family, ThreeAndFour) {
  Heisenberg H;
  const auto b = ball(H, 22);
  for (long long n = 3; n <= 4; ++n) {
    const auto row = heis_family(n, b, 22 - (4 * n + 2));
    EXPECT_EQ(row.distance, 4 * n + 2);
    EXPECT_GE(row.report.depth, 3);
    EXPECT_TRUE(row.ok());
  }
}

TEST(Family, RejectsSmallN) {
  Heisenberg H;
  const auto b = ball(H, 12);
  try {
    heis_family(2, b, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolated);
  }
}

TEST(Family, InsufficientRadius) {
  Heisenberg H;
  const auto b = ball(H, 15);
  try {
    heis_family(3, b, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientRadius);
  }
}
