#include <gtest/gtest.h>

#include <map>

#include "deadend/deadend.hpp"
#include "support.hpp"

using namespace deadend;

namespace {

WeightedGenSet example_set() { return {2, {{ZVec{{1, 0}}, 2}, {ZVec{{0, 1}}, 3}, {ZVec{{1, 1}}, 4}}}; }

/// Bellman-Ford style relaxation on a box: an oracle for weighted distance
/// that shares nothing with the Dijkstra sweep.
std::map<std::pair<long long, long long>, long long> relax_box(const WeightedGenSet& ws, long long half) {
  std::map<std::pair<long long, long long>, long long> dist;
  dist[{0, 0}] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    auto snapshot = dist;
    for (const auto& [p, d] : snapshot) {
      for (const auto& g : ws.gens) {
        for (int s : {1, -1}) {
          const std::pair<long long, long long> q{p.first + s * g.v[0], p.second + s * g.v[1]};
          if (std::llabs(q.first) > half || std::llabs(q.second) > half) continue;
          auto it = dist.find(q);
          if (it == dist.end() || it->second > d + g.w) {
            dist[q] = d + g.w;
            changed = true;
          }
        }
      }
    }
  }
  return dist;
}

std::optional<WeightedGenSet> random_generating_set(std::mt19937_64& r) {
  WeightedGenSet ws{2, {}};
  const auto count = testsupport::uniform(r, 2, 4);
  for (long long i = 0; i < count; ++i) {
    ZVec v{{testsupport::uniform(r, -2, 2), testsupport::uniform(r, -2, 2)}};
    if (v.is_zero()) continue;
    ws.gens.push_back({v, testsupport::uniform(r, 1, 4)});
  }
  std::vector<ZVec> vs;
  for (const auto& g : ws.gens) vs.push_back(g.v);
  if (vs.size() < 2 || !generates_lattice(2, vs)) return std::nullopt;
  return ws;
}

/// All exponent vectors of the given length with total <= t.
void for_each_exponents(std::size_t len, long long t, const std::function<void(const std::vector<long long>&)>& f) {
  std::vector<long long> e(len, 0);
  std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
    if (i == len) {
      f(e);
      return;
    }
    for (long long x = 0; x <= left; ++x) {
      e[i] = x;
      rec(i + 1, left - x);
    }
    e[i] = 0;
  };
  rec(0, t);
}

}  // namespace

TEST(WeightedDistance, Examples) {
  EXPECT_EQ(weighted_distance(WeightedGenSet::standard(2), ZVec{{5, 0}}), 5);
  EXPECT_EQ(weighted_distance(example_set(), ZVec{{1, 1}}), 4);
  EXPECT_EQ(weighted_distance(example_set(), ZVec{{0, 0}}), 0);
}

TEST(WeightedDistance, AgreesWithRelaxationOracle) {
  auto r = testsupport::rng(20);
  for (int t = 0; t < 6;) {
    auto ws = random_generating_set(r);
    if (!ws) continue;
    ++t;
    const auto oracle = relax_box(*ws, 14);
    for (long long x = -4; x <= 4; ++x)
      for (long long y = -4; y <= 4; ++y) {
        EXPECT_EQ(weighted_distance(*ws, ZVec{{x, y}}), oracle.at({x, y})) << x << "," << y;
      }
  }
}

TEST(WeightedDistance, NonGeneratingRejected) {
  try {
    weighted_distance(WeightedGenSet{2, {{ZVec{{1, 0}}, 1}, {ZVec{{2, 0}}, 1}}}, ZVec{{1, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotGenerating);
  }
  // spans a sublattice of index 2
  EXPECT_FALSE(generates_lattice(2, {ZVec{{1, 1}}, ZVec{{1, -1}}}));
  EXPECT_TRUE(generates_lattice(2, {ZVec{{1, 1}}, ZVec{{1, 0}}, ZVec{{2, 2}}}));
}

TEST(Polytope, StandardSquare) {
  const auto poly = build_polytope(WeightedGenSet::standard(2));
  EXPECT_EQ(poly.M, 1);
  EXPECT_EQ(poly.facets.size(), 4u);
}

TEST(Polytope, WeightedExample) {
  const auto poly = build_polytope(example_set());
  EXPECT_EQ(poly.M, 12);
  ASSERT_EQ(poly.scaled.size(), 3u);
  EXPECT_EQ(poly.scaled[0].point, (ZVec{{6, 0}}));
  EXPECT_EQ(poly.scaled[1].point, (ZVec{{0, 4}}));
  EXPECT_EQ(poly.scaled[2].point, (ZVec{{3, 3}}));
  // hull of +-(6,0), +-(0,4), +-(3,3) is a hexagon
  EXPECT_EQ(poly.facets.size(), 6u);
}

TEST(Polytope, CollinearRejected) {
  try {
    build_polytope(WeightedGenSet{2, {{ZVec{{1, 0}}, 1}, {ZVec{{2, 0}}, 1}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::NotGenerating || e.kind() == ErrorKind::DegenerateHull);
  }
}

TEST(Polytope, RankFourUnsupported) {
  try {
    build_polytope(WeightedGenSet::standard(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedRank);
  }
}

TEST(Polytope, FacetFunctionalsProperty) {
  auto r = testsupport::rng(21);
  std::vector<WeightedGenSet> sets{WeightedGenSet::standard(2), WeightedGenSet::standard(3), example_set()};
  while (sets.size() < 12) {
    if (auto ws = random_generating_set(r)) sets.push_back(*ws);
  }
  for (const auto& ws : sets) {
    const auto poly = build_polytope(ws);
    for (const auto& f : poly.facets) {
      for (const auto& s : poly.scaled) {
        for (int sign : {1, -1}) {
          const ZVec p = s.point * sign;
          const Rational v = detail::dot(f.functional, p);
          EXPECT_LE(v, Rational(1));
          const bool on = std::find(f.points.begin(), f.points.end(), p) != f.points.end();
          EXPECT_EQ(on, v == Rational(1));
        }
      }
      EXPECT_EQ(f.simplices.empty(), false);
      for (const auto& sx : f.simplices) EXPECT_EQ(sx.size(), static_cast<std::size_t>(ws.n));
    }
  }
}

TEST(FacetRay, StandardExample) {
  const auto ws = WeightedGenSet::standard(2);
  const auto poly = build_polytope(ws);
  const auto w = facet_ray_word(ws, poly, {ZVec{{1, 0}}, ZVec{{0, 1}}}, {2, 3});
  EXPECT_EQ(GenAlphabet::standard(2).render(w), "a a b b b");
  WeightedZn Z(ws);
  EXPECT_EQ(weighted_distance(ws, evaluate(Z, w)), 5);
}

TEST(FacetRay, WeightedExample) {
  const auto ws = example_set();
  const auto poly = build_polytope(ws);
  const auto w = facet_ray_word(ws, poly, {ZVec{{6, 0}}, ZVec{{3, 3}}}, {1, 1});
  WeightedZn Z(ws);
  EXPECT_EQ(evaluate(Z, w), (ZVec{{9, 3}}));
  EXPECT_EQ(word_weight(Z, w), 24);
  EXPECT_EQ(weighted_distance(ws, ZVec{{9, 3}}), 24);
}

TEST(FacetRay, ZeroExponentsGiveEmptyWord) {
  const auto ws = example_set();
  const auto poly = build_polytope(ws);
  EXPECT_TRUE(facet_ray_word(ws, poly, {ZVec{{6, 0}}, ZVec{{3, 3}}}, {0, 0}).empty());
}

TEST(FacetRay, NotAFacet) {
  const auto ws = WeightedGenSet::standard(2);
  const auto poly = build_polytope(ws);
  try {
    facet_ray_word(ws, poly, {ZVec{{1, 0}}, ZVec{{-1, 0}}}, {1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAFacet);
  }
}

TEST(FacetRay, GeodesicRayProperty) {
  auto r = testsupport::rng(22);
  std::vector<WeightedGenSet> sets{example_set()};
  while (sets.size() < 6) {
    if (auto ws = random_generating_set(r)) sets.push_back(*ws);
  }
  for (const auto& ws : sets) {
    WeightedZn Z(ws);
    const auto poly = build_polytope(ws);
    const auto b = ball(Z, 8 * poly.M);
    for (const auto& f : poly.facets) {
      std::vector<ZVec> pts;
      for (const auto& v : f.vertices) pts.push_back(v.point);
      for_each_exponents(pts.size(), 6, [&](const std::vector<long long>& e) {
        const auto w = facet_ray_word(ws, poly, pts, e);
        const auto end = evaluate(Z, w);
        ASSERT_TRUE(b.find(end));
        EXPECT_EQ(word_weight(Z, w), *b.find(end));
        // one more step along the first vertex adds exactly M
        auto e2 = e;
        ++e2[0];
        const auto end2 = evaluate(Z, facet_ray_word(ws, poly, pts, e2));
        ASSERT_TRUE(b.find(end2));
        EXPECT_EQ(*b.find(end2) - *b.find(end), poly.M);
      });
    }
  }
}

TEST(Parallelepiped, MatchesCrossProductEnumeration) {
  auto r = testsupport::rng(23);
  for (int t = 0; t < 30; ++t) {
    ZVec u{{testsupport::uniform(r, -6, 6), testsupport::uniform(r, -6, 6)}};
    ZVec v{{testsupport::uniform(r, -6, 6), testsupport::uniform(r, -6, 6)}};
    const long long det = u[0] * v[1] - u[1] * v[0];
    if (det == 0) continue;
    // x = l u + m v with l = cross(x, v)/cross(u, v), m = cross(u, x)/cross(u, v)
    std::set<ZVec> expect;
    for (long long x = -12; x <= 12; ++x)
      for (long long y = -12; y <= 12; ++y) {
        long long l = x * v[1] - y * v[0], m = u[0] * y - u[1] * x;
        if (det < 0) l = -l, m = -m;
        const long long D = std::llabs(det);
        if (l >= 0 && l <= D && m >= 0 && m <= D) expect.insert(ZVec{{x, y}});
      }
    const auto got = parallelepiped_points({u, v});
    EXPECT_EQ(std::set<ZVec>(got.begin(), got.end()), expect);
  }
}

TEST(DepthBound, StandardZ2) {
  const auto ws = WeightedGenSet::standard(2);
  WeightedZn Z(ws);
  const auto b = ball(Z, 14);
  const auto rep = depth_bound(ws, &b);
  EXPECT_EQ(rep.D, 2);
  EXPECT_EQ(rep.bound, 6);
  EXPECT_GT(rep.checked, 0u);
  EXPECT_EQ(rep.max_depth, 1);
  EXPECT_EQ(rep.violations, 0u);
}

TEST(DepthBound, RankOne) {
  const auto ws = WeightedGenSet::standard(1);
  WeightedZn Z(ws);
  const auto b = ball(Z, 10);
  const auto rep = depth_bound(ws, &b);
  EXPECT_EQ(rep.D, 1);
  EXPECT_EQ(rep.bound, 4);
  EXPECT_EQ(rep.max_depth, 1);
}

TEST(DepthBound, WeightedExampleHolds) {
  const auto ws = example_set();
  WeightedZn Z(ws);
  const auto pre = depth_bound(ws);
  const auto b = ball(Z, pre.bound + 20);
  const auto rep = depth_bound(ws, &b);
  EXPECT_GT(rep.checked, 0u);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_LE(rep.max_depth, rep.bound);
}

TEST(DepthBound, RandomSetsProperty) {
  auto r = testsupport::rng(24);
  for (int t = 0; t < 4;) {
    auto ws = random_generating_set(r);
    if (!ws) continue;
    ++t;
    WeightedZn Z(*ws);
    const auto pre = depth_bound(*ws);
    const auto b = ball(Z, pre.bound + 12);
    const auto rep = depth_bound(*ws, &b);
    EXPECT_EQ(rep.violations, 0u);
    EXPECT_LE(rep.max_depth, rep.bound);
  }
}

TEST(DepthBound, RankThree) {
  const auto ws = WeightedGenSet::standard(3);
  const auto rep = depth_bound(ws);
  // unit cube corner (1,1,1) is the farthest parallelepiped point
  EXPECT_EQ(rep.D, 3);
  EXPECT_EQ(rep.bound, 8);
}
