#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "deadend/core.hpp"
#include "deadend/error.hpp"
#include "deadend/search.hpp"

namespace deadend {

using Rational = boost::rational<long long>;

/// Integer vector; the element type of ℤⁿ and the translation part of
/// euclidean groups.
struct ZVec {
  std::vector<long long> x;

  std::size_t size() const { return x.size(); }
  long long operator[](std::size_t i) const { return x[i]; }
  long long& operator[](std::size_t i) { return x[i]; }
  bool is_zero() const {
    return std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
  }
  ZVec operator-() const {
    ZVec r = *this;
    for (auto& v : r.x) v = -v;
    return r;
  }
  ZVec operator+(const ZVec& o) const {
    ZVec r = *this;
    for (std::size_t i = 0; i < x.size(); ++i) r.x[i] += o.x[i];
    return r;
  }
  ZVec operator*(long long s) const {
    ZVec r = *this;
    for (auto& v : r.x) v *= s;
    return r;
  }
  friend auto operator<=>(const ZVec&, const ZVec&) = default;
  friend bool operator==(const ZVec&, const ZVec&) = default;
};

inline std::string render_vec(const std::vector<long long>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + "]";
}

}  // namespace deadend

template <>
struct std::hash<deadend::ZVec> {
  std::size_t operator()(const deadend::ZVec& v) const noexcept {
    std::size_t seed = v.x.size();
    for (long long c : v.x) deadend::hash_combine(seed, std::hash<long long>{}(c));
    return seed;
  }
};

namespace deadend {

// ---------------------------------------------------------------------------
// Weighted generating sets
// ---------------------------------------------------------------------------

struct WeightedGen {
  ZVec v;
  long long w = 1;
};

struct WeightedGenSet {
  int n = 0;
  std::vector<WeightedGen> gens;

  static WeightedGenSet standard(int n) {
    WeightedGenSet ws{n, {}};
    for (int i = 0; i < n; ++i) {
      ZVec e{std::vector<long long>(static_cast<std::size_t>(n), 0)};
      e[static_cast<std::size_t>(i)] = 1;
      ws.gens.push_back({e, 1});
    }
    return ws;
  }
};

namespace detail {

inline long long det_int(std::vector<std::vector<long long>> a) {
  // Bareiss fraction-free elimination.
  const std::size_t n = a.size();
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Solves A x = b over the rationals; nullopt when A is singular.
inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == Rational(0)) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == Rational(0)) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

inline Rational dot(const std::vector<Rational>& a, const ZVec& v) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * v[i];
  return s;
}

}  // namespace detail

/// True when the vectors generate ℤⁿ as a group: the gcd of all n×n minors
/// of the generator matrix is 1.
inline bool generates_lattice(int n, const std::vector<ZVec>& vs) {
  long long g = 0;
  detail::for_each_subset(vs.size(), static_cast<std::size_t>(n), [&](const auto& idx) {
    std::vector<std::vector<long long>> m;
    for (auto i : idx) m.push_back(vs[i].x);
    g = std::gcd(g, std::llabs(detail::det_int(m)));
  });
  return g == 1;
}

inline void validate(const WeightedGenSet& ws) {
  if (ws.n < 1) throw Error(ErrorKind::InvalidInput, "rank must be >= 1");
  std::vector<ZVec> vs;
  for (const auto& g : ws.gens) {
    if (g.v.size() != static_cast<std::size_t>(ws.n)) {
      throw Error(ErrorKind::InvalidInput, "generator dimension does not match rank");
    }
    if (g.w < 1) throw Error(ErrorKind::InvalidInput, "weights must be >= 1");
    vs.push_back(g.v);
  }
  if (!generates_lattice(ws.n, vs)) {
    throw Error(ErrorKind::NotGenerating, "generators do not span Z^" + std::to_string(ws.n));
  }
}

/// ℤⁿ with a weighted generating set, as a marked group.
class WeightedZn {
 public:
  using Element = ZVec;

  explicit WeightedZn(WeightedGenSet ws) : ws_(std::move(ws)) {
    validate(ws_);
    alphabet_ = GenAlphabet::standard(static_cast<int>(ws_.gens.size()));
  }

  static WeightedZn standard(int n) { return WeightedZn(WeightedGenSet::standard(n)); }

  const GenAlphabet& alphabet() const { return alphabet_; }
  const WeightedGenSet& gen_set() const { return ws_; }
  int rank() const { return ws_.n; }
  Element identity() const { return ZVec{std::vector<long long>(static_cast<std::size_t>(ws_.n), 0)}; }
  Element multiply(const Element& e, Letter l) const {
    Element r = e;
    const auto& v = ws_.gens[static_cast<std::size_t>(l.gen)].v;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += l.sign * v[i];
    return r;
  }
  long long weight(Letter l) const { return ws_.gens[static_cast<std::size_t>(l.gen)].w; }
  std::string render(const Element& e) const { return render_vec(e.x); }

 private:
  WeightedGenSet ws_;
  GenAlphabet alphabet_;
};

/// Exact weighted word length of v. Generation is checked up front, so the
/// unbounded Dijkstra terminates.
inline long long weighted_distance(const WeightedGenSet& ws, const ZVec& v) {
  WeightedZn g(ws);
  if (v.size() != static_cast<std::size_t>(ws.n)) {
    throw Error(ErrorKind::InvalidInput, "vector dimension does not match rank");
  }
  std::optional<long long> found;
  detail::sweep_visit(g, g.identity(), std::numeric_limits<long long>::max() / 4,
                      element_budget_from_env(), [&](const ZVec& e, long long d) {
                        if (e == v) {
                          found = d;
                          return false;
                        }
                        return true;
                      });
  return *found;
}

// ---------------------------------------------------------------------------
// The polytope B
// ---------------------------------------------------------------------------

struct PolyVertex {
  ZVec point;     // scaled generator aM/mu(a), possibly negated
  Letter letter;  // original generator and sign it came from
};

struct Facet {
  std::vector<Rational> functional;  // a with a.x = 1 on the facet
  std::vector<ZVec> points;          // all scaled generators on the facet
  std::vector<PolyVertex> vertices;  // extreme points, sorted
  /// Fan triangulation from the least vertex; indices into `vertices`.
  std::vector<std::vector<std::size_t>> simplices;
};

struct ScaledPolytope {
  int n = 0;
  long long M = 1;
  std::vector<PolyVertex> scaled;  // A' with letters, positive signs only
  std::vector<Facet> facets;
};

namespace detail {

inline long long cross2(const std::vector<long long>& o, const std::vector<long long>& a,
                        const std::vector<long long>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Indices of the strict convex hull of points in the plane, counterclockwise
/// starting from the least point.
inline std::vector<std::size_t> hull2(const std::vector<std::vector<long long>>& pts) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return pts[a] < pts[b]; });
  if (idx.size() < 3) return idx;
  std::vector<std::size_t> h(2 * idx.size());
  std::size_t k = 0;
  for (auto i : idx) {
    while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lo = k + 1; t-- > 0;) {
    auto i = idx[t];
    while (k >= lo && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

}  // namespace detail

inline ScaledPolytope build_polytope(const WeightedGenSet& ws) {
  if (ws.n > 3) throw Error(ErrorKind::UnsupportedRank, "exact hull supports rank <= 3");
  try {
    validate(ws);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotGenerating) {
      throw Error(ErrorKind::DegenerateHull, std::string("hull is not full-dimensional: ") + e.what());
    }
    throw;
  }
  const auto n = static_cast<std::size_t>(ws.n);
  ScaledPolytope poly;
  poly.n = ws.n;
  for (const auto& g : ws.gens) poly.M = std::lcm(poly.M, g.w);

  // A' ∪ A'^{-1}; the lowest generator index wins when two scale to one point.
  std::map<ZVec, Letter> pts;
  for (std::size_t i = 0; i < ws.gens.size(); ++i) {
    const auto& g = ws.gens[i];
    ZVec p = g.v * (poly.M / g.w);
    if (p.is_zero()) continue;
    poly.scaled.push_back({p, Letter{static_cast<int>(i), 1}});
    pts.emplace(p, Letter{static_cast<int>(i), 1});
    pts.emplace(-p, Letter{static_cast<int>(i), -1});
  }
  std::vector<PolyVertex> all;
  for (const auto& [p, l] : pts) all.push_back({p, l});

  std::set<std::vector<Rational>> seen;
  detail::for_each_subset(all.size(), n, [&](const auto& idx) {
    std::vector<std::vector<Rational>> a;
    for (auto i : idx) a.emplace_back(all[i].point.x.begin(), all[i].point.x.end());
    auto sol = detail::solve(a, std::vector<Rational>(n, Rational(1)));
    if (!sol || seen.count(*sol)) return;
    for (const auto& q : all) {
      if (detail::dot(*sol, q.point) > Rational(1)) return;
    }
    seen.insert(*sol);
    Facet f;
    f.functional = *sol;
    std::vector<PolyVertex> on;
    for (const auto& q : all) {
      if (detail::dot(*sol, q.point) == Rational(1)) on.push_back(q);
    }
    for (const auto& q : on) f.points.push_back(q.point);
    if (n == 1) {
      f.vertices = on;
      f.simplices = {{0}};
    } else {
      // Drop a coordinate the functional depends on: injective on the plane.
      std::size_t drop = 0;
      while ((*sol)[drop] == Rational(0)) ++drop;
      std::vector<std::vector<long long>> proj;
      for (const auto& q : on) {
        std::vector<long long> p;
        for (std::size_t c = 0; c < n; ++c) {
          if (c != drop) p.push_back(q.point[c]);
        }
        proj.push_back(p);
      }
      if (n == 2) {
        auto [lo, hi] = std::minmax_element(proj.begin(), proj.end());
        f.vertices = {on[static_cast<std::size_t>(lo - proj.begin())],
                      on[static_cast<std::size_t>(hi - proj.begin())]};
        f.simplices = {{0, 1}};
      } else {
        for (auto i : detail::hull2(proj)) f.vertices.push_back(on[i]);
        for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i) f.simplices.push_back({0, i, i + 1});
      }
    }
    poly.facets.push_back(std::move(f));
  });
  if (poly.facets.empty()) throw Error(ErrorKind::DegenerateHull, "no facets found");
  return poly;
}

/// Index of a facet containing every given point, if any.
inline std::optional<std::size_t> find_facet(const ScaledPolytope& poly,
                                             const std::vector<ZVec>& pts) {
  for (std::size_t f = 0; f < poly.facets.size(); ++f) {
    bool all_on = true;
    for (const auto& p : pts) {
      const auto& fp = poly.facets[f].points;
      if (std::find(fp.begin(), fp.end(), p) == fp.end()) {
        all_on = false;
        break;
      }
    }
    if (all_on) return f;
  }
  return std::nullopt;
}

/// a_1^{i_1} ... a_m^{i_m} along a facet, each scaled generator aM/mu(a)
/// written as M/mu(a) copies of a. `points` are facet points of B.
inline Word facet_ray_word(const WeightedGenSet& ws, const ScaledPolytope& poly,
                           const std::vector<ZVec>& points,
                           const std::vector<long long>& exponents) {
  if (points.size() != exponents.size()) {
    throw Error(ErrorKind::InvalidInput, "one exponent per facet point");
  }
  if (!find_facet(poly, points)) throw Error(ErrorKind::NotAFacet, "points do not share a facet");
  Word out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (exponents[i] < 0) throw Error(ErrorKind::InvalidInput, "exponents must be >= 0");
    std::optional<Letter> letter;
    for (std::size_t gi = 0; gi < ws.gens.size() && !letter; ++gi) {
      ZVec p = ws.gens[gi].v * (poly.M / ws.gens[gi].w);
      if (p == points[i]) letter = Letter{static_cast<int>(gi), 1};
      else if (-p == points[i]) letter = Letter{static_cast<int>(gi), -1};
    }
    if (!letter) throw Error(ErrorKind::NotAFacet, "point is not a scaled generator");
    const long long copies = poly.M / ws.gens[static_cast<std::size_t>(letter->gen)].w;
    for (long long e = 0; e < exponents[i] * copies; ++e) out.push_back(*letter);
  }
  return out;
}

/// Lattice points of the closed parallelepiped spanned by `span`.
inline std::vector<ZVec> parallelepiped_points(const std::vector<ZVec>& span) {
  const std::size_t n = span.size();
  std::vector<long long> lo(n, 0), hi(n, 0);
  for (const auto& v : span) {
    for (std::size_t c = 0; c < n; ++c) (v[c] < 0 ? lo[c] : hi[c]) += v[c];
  }
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = span[c][r];
  }
  std::vector<ZVec> out;
  ZVec cur{lo};
  while (true) {
    std::vector<Rational> b(cur.x.begin(), cur.x.end());
    auto lam = detail::solve(a, b);
    if (!lam) throw Error(ErrorKind::DegenerateHull, "degenerate simplex");
    if (std::all_of(lam->begin(), lam->end(), [](const Rational& q) { return q >= Rational(0) && q <= Rational(1); })) {
      out.push_back(cur);
    }
    std::size_t c = 0;
    while (c < n && cur[c] == hi[c]) cur[c] = lo[c], ++c;
    if (c == n) break;
    ++cur[c];
  }
  return out;
}

struct DepthBoundReport {
  long long D = 0;
  long long M = 1;
  long long bound = 0;  // 2D + M + 1
  std::size_t checked = 0;
  long long max_depth = 0;
  std::size_t violations = 0;
};

/// Computes 2D+M+1 for the weighted set. When a ball is supplied, checks every
/// element with |e| + bound <= radius against it.
inline DepthBoundReport depth_bound(const WeightedGenSet& ws,
                                    const BallIndex<WeightedZn>* b = nullptr) {
  WeightedZn g(ws);
  const auto poly = build_polytope(ws);
  DepthBoundReport rep;
  rep.M = poly.M;
  std::vector<ZVec> targets;
  for (const auto& f : poly.facets) {
    for (const auto& s : f.simplices) {
      std::vector<ZVec> span;
      for (auto i : s) span.push_back(f.vertices[i].point);
      for (auto& p : parallelepiped_points(span)) targets.push_back(std::move(p));
    }
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  std::size_t left = targets.size();
  std::set<ZVec> want(targets.begin(), targets.end());
  detail::sweep_visit(g, g.identity(), std::numeric_limits<long long>::max() / 4,
                      element_budget_from_env(), [&](const ZVec& e, long long d) {
                        if (want.count(e)) {
                          rep.D = std::max(rep.D, d);
                          --left;
                        }
                        return left > 0;
                      });
  rep.bound = 2 * rep.D + rep.M + 1;
  if (b) {
    for (std::size_t i = 0; i < b->size(); ++i) {
      if (b->distance_at(i) + rep.bound > b->radius()) continue;
      auto d = depth(g, b->elements()[i], *b, rep.bound);
      ++rep.checked;
      rep.max_depth = std::max(rep.max_depth, d.depth);
      if (d.exceeds_cap) ++rep.violations;
    }
  }
  return rep;
}

}  // namespace deadend
