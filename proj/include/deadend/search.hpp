#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "deadend/core.hpp"
#include "deadend/error.hpp"

namespace deadend {

inline constexpr std::size_t kDefaultElementBudget = 5'000'000;

/// Element budget, overridable through DEADEND_BUDGET.
inline std::size_t element_budget_from_env(std::size_t fallback = kDefaultElementBudget) {
  if (const char* env = std::getenv("DEADEND_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

// ---------------------------------------------------------------------------
// Bounded shortest-path sweeps
// ---------------------------------------------------------------------------

template <MarkedGroup G>
struct Reached {
  typename G::Element element;
  long long distance;
};

namespace detail {

/// Shortest-path sweep from `source` out to distance `radius` inclusive.
/// Unweighted groups use plain BFS; weighted ones use Dijkstra with ties
/// broken by element order. Elements are visited in (distance, element)
/// order, which is the determinism contract shared by every caller. The
/// visitor returns false to stop early.
template <MarkedGroup G, class Visit>
void sweep_visit(const G& g, const typename G::Element& source, long long radius,
                 std::size_t budget, Visit&& visit) {
  using E = typename G::Element;
  std::unordered_map<E, long long> best;
  const auto letters = g.alphabet().letters();
  auto over_budget = [&] {
    if (best.size() > budget) {
      throw Error(ErrorKind::ResourceCap,
                  "ball exceeds element budget of " + std::to_string(budget));
    }
  };

  if constexpr (!WeightedGroup<G>) {
    std::vector<E> frontier{source};
    best.emplace(source, 0);
    for (long long d = 0; !frontier.empty(); ++d) {
      std::sort(frontier.begin(), frontier.end());
      for (const E& e : frontier) {
        if (!visit(e, d)) return;
      }
      if (d == radius) break;
      std::vector<E> next;
      for (const E& e : frontier) {
        for (Letter l : letters) {
          E n = g.multiply(e, l);
          if (best.emplace(n, d + 1).second) next.push_back(std::move(n));
        }
      }
      over_budget();
      frontier = std::move(next);
    }
  } else {
    using Item = std::pair<long long, E>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    best.emplace(source, 0);
    pq.push({0, source});
    while (!pq.empty()) {
      auto [d, e] = pq.top();
      pq.pop();
      auto it = best.find(e);
      if (it->second < d) continue;
      if (!visit(e, d)) return;
      for (Letter l : letters) {
        long long nd = d + g.weight(l);
        if (nd > radius) continue;
        E n = g.multiply(e, l);
        auto [slot, inserted] = best.emplace(n, nd);
        if (inserted || nd < slot->second) {
          slot->second = nd;
          pq.push({nd, std::move(n)});
        }
      }
      over_budget();
    }
  }
}

template <MarkedGroup G>
std::vector<Reached<G>> sweep(const G& g, const typename G::Element& source, long long radius,
                              std::size_t budget) {
  std::vector<Reached<G>> out;
  sweep_visit(g, source, radius, budget, [&](const typename G::Element& e, long long d) {
    out.push_back({e, d});
    return true;
  });
  return out;
}

}  // namespace detail

/// Elements within `radius` of `center`, with exact distances from `center`.
template <MarkedGroup G>
std::vector<Reached<G>> neighborhood(const G& g, const typename G::Element& center,
                                     long long radius,
                                     std::size_t budget = kDefaultElementBudget) {
  return detail::sweep(g, center, radius, budget);
}

// ---------------------------------------------------------------------------
// BallIndex
// ---------------------------------------------------------------------------

/// Exact distance table for the closed Cayley ball of a given radius.
template <MarkedGroup G>
class BallIndex {
 public:
  using Element = typename G::Element;

  BallIndex() = default;

  BallIndex(long long radius, std::vector<Reached<G>> sorted) : radius_(radius) {
    elements_.reserve(sorted.size());
    distances_.reserve(sorted.size());
    index_.reserve(sorted.size());
    for (auto& r : sorted) {
      const auto d = static_cast<std::size_t>(r.distance);
      if (spheres_.size() <= d) spheres_.resize(d + 1, 0);
      ++spheres_[d];
      index_.emplace(r.element, elements_.size());
      elements_.push_back(std::move(r.element));
      distances_.push_back(r.distance);
    }
  }

  long long radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Element>& elements() const { return elements_; }
  long long distance_at(std::size_t i) const { return distances_[i]; }

  /// Per-distance counts; index d holds the number of elements at distance d.
  /// Weighted balls can have empty spheres.
  const std::vector<std::size_t>& spheres() const { return spheres_; }

  std::optional<long long> find(const Element& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return distances_[it->second];
  }

  bool contains(const Element& e) const { return index_.count(e) != 0; }

 private:
  long long radius_ = 0;
  std::vector<Element> elements_;
  std::vector<long long> distances_;
  std::unordered_map<Element, std::size_t> index_;
  std::vector<std::size_t> spheres_;
};

template <MarkedGroup G>
BallIndex<G> ball(const G& g, long long radius, std::size_t budget = element_budget_from_env()) {
  if (radius < 0) throw Error(ErrorKind::InvalidInput, "radius must be nonnegative");
  return BallIndex<G>(radius, detail::sweep(g, g.identity(), radius, budget));
}

template <MarkedGroup G>
long long distance(const G&, const typename G::Element& e, const BallIndex<G>& b) {
  if (auto d = b.find(e)) return *d;
  throw Error(ErrorKind::NotInBall,
              "element lies outside the radius-" + std::to_string(b.radius()) + " ball");
}

// ---------------------------------------------------------------------------
// Depth
// ---------------------------------------------------------------------------

template <MarkedGroup G>
struct DepthReport {
  typename G::Element element;
  long long distance_from_identity = 0;
  /// Exact depth when `exceeds_cap` is false, otherwise the lower bound cap+1.
  long long depth = 0;
  bool exceeds_cap = false;
  std::optional<typename G::Element> witness;
  long long witness_distance_from_identity = 0;
};

/// Distance from `e` to the complement of the closed ball of radius |e|.
/// Requires the index radius to cover |e| + cap so that every element within
/// cap of `e` has a known distance.
template <MarkedGroup G>
DepthReport<G> depth(const G& g, const typename G::Element& e, const BallIndex<G>& b,
                     long long cap) {
  const long long de = distance(g, e, b);
  if (de + cap > b.radius()) {
    throw Error(ErrorKind::InsufficientRadius,
                "need radius >= " + std::to_string(de + cap) + ", index has " +
                    std::to_string(b.radius()));
  }
  DepthReport<G> rep{e, de, cap + 1, true, std::nullopt, 0};
  detail::sweep_visit(g, e, cap, kDefaultElementBudget, [&](const auto& x, long long d) {
    auto dx = b.find(x);
    if (!dx) throw Error(ErrorKind::InsufficientRadius, "neighborhood left the index");
    if (*dx > de) {
      rep.depth = d;
      rep.exceeds_cap = false;
      rep.witness = x;
      rep.witness_distance_from_identity = *dx;
      return false;
    }
    return true;
  });
  return rep;
}

/// All elements e with |e| + cap <= radius and depth(e) >= min_depth, sorted
/// by distance then element. `cap` defaults to min_depth - 1, the smallest cap
/// that decides the threshold; larger caps give exact depths further out.
template <MarkedGroup G>
std::vector<DepthReport<G>> deadend_scan(const G& g, const BallIndex<G>& b, long long min_depth,
                                         std::optional<long long> cap = std::nullopt) {
  if (min_depth < 1) throw Error(ErrorKind::InvalidInput, "min_depth must be >= 1");
  const long long c = cap.value_or(min_depth - 1);
  if (c < min_depth - 1) throw Error(ErrorKind::InvalidInput, "cap must be >= min_depth - 1");
  std::vector<DepthReport<G>> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.distance_at(i) + c > b.radius()) continue;
    auto rep = depth(g, b.elements()[i], b, c);
    if (rep.depth >= min_depth) out.push_back(std::move(rep));
  }
  // The index is already in (distance, element) order.
  return out;
}

// ---------------------------------------------------------------------------
// Metric perturbation
// ---------------------------------------------------------------------------

template <MarkedGroup G>
struct LocalMax {
  typename G::Element point;
  long long radius = 0;
  /// Offset x in the monotone-step construction (distance of `point` from the
  /// starting point is at most this).
  long long step = 0;
  /// True when the plateau construction applied, so `point` dominates its
  /// radius-ball in the whole group; false when the fallback (global maximum
  /// over B_r(a)) was used and domination holds inside B_r(a) only.
  bool global = true;
};

/// Given f(b) <= f(a) + slack on B_r(a), returns a' and radius floor(r/slack)
/// such that f attains its maximum over B_radius(a') at a'.
///
/// g(x) = max of f over B_x(a) is nondecreasing with g(r) <= g(0) + slack, so
/// some window (x, x + r/slack] is flat; a' is a maximiser of f on B_x(a).
template <MarkedGroup G, class F>
LocalMax<G> local_max_from_slack(const G& g, F&& f, const typename G::Element& a, long long r,
                                 long long slack) {
  using E = typename G::Element;
  if (r < 0) throw Error(ErrorKind::InvalidInput, "radius must be nonnegative");
  const long long n = std::max<long long>(slack, 1);
  const auto around = neighborhood(g, a, r);
  const long long fa = f(a);
  for (const auto& p : around) {
    if (f(p.element) > fa + slack) {
      throw Error(ErrorKind::HypothesisViolated, "f exceeds f(a) + slack on B_r(a)");
    }
  }
  // running maximum g(x) and a maximiser (least element among ties)
  std::vector<long long> gx(static_cast<std::size_t>(r) + 1, fa);
  std::vector<E> arg(static_cast<std::size_t>(r) + 1, a);
  {
    long long cur = fa;
    E cur_arg = a;
    std::size_t k = 0;
    for (long long x = 0; x <= r; ++x) {
      for (; k < around.size() && around[k].distance <= x; ++k) {
        long long v = f(around[k].element);
        if (v > cur || (v == cur && around[k].element < cur_arg)) {
          cur = v;
          cur_arg = around[k].element;
        }
      }
      gx[static_cast<std::size_t>(x)] = cur;
      arg[static_cast<std::size_t>(x)] = cur_arg;
    }
  }
  const long long width = r / n;
  for (long long x = 0; x + width <= r; ++x) {
    if (gx[static_cast<std::size_t>(x + width)] == gx[static_cast<std::size_t>(x)]) {
      return {arg[static_cast<std::size_t>(x)], width, x, true};
    }
  }
  return {arg[static_cast<std::size_t>(r)], width, r, false};
}

/// One f1-pocket and the f2-pocket derived from it.
template <MarkedGroup G>
struct TransferPair {
  typename G::Element source;
  LocalMax<G> target;
  bool verified = false;
};

template <MarkedGroup G>
struct TransferReport {
  long long bound = 0;        // C
  long long source_depth = 0; // r + C
  long long slack = 0;
  std::vector<TransferPair<G>> pairs;
  std::size_t sources = 0;
};

/// Two integer functions f1, f2 on the same ball with |f1 - f2| < C. For every
/// element where f1 is maximal on its radius-(r + C - 1) neighbourhood (an
/// f1-dead-end of depth >= r + C), produces an f2-local maximum via
/// local_max_from_slack and checks it against the index.
template <MarkedGroup G, class F1, class F2>
TransferReport<G> depth_transfer_check(const G& g, const BallIndex<G>& b, F1&& f1, F2&& f2,
                                       long long bound, long long r) {
  if (bound < 1) throw Error(ErrorKind::InvalidInput, "C must be >= 1");
  for (const auto& e : b.elements()) {
    long long diff = f1(e) - f2(e);
    if (diff >= bound || -diff >= bound) {
      throw Error(ErrorKind::BoundViolated, "|f1 - f2| >= C at " + g.render(e));
    }
  }
  TransferReport<G> rep;
  rep.bound = bound;
  rep.source_depth = r + bound;
  // f2(b) < f1(b) + C <= f1(a) + C < f2(a) + 2C, i.e. slack 2C - 2 in integers.
  rep.slack = std::max<long long>(2 * bound - 2, 0);
  const long long reach = r + bound - 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.distance_at(i) + reach > b.radius()) continue;
    const auto& a = b.elements()[i];
    const long long fa = f1(a);
    bool pocket = true;
    for (const auto& p : neighborhood(g, a, reach)) {
      if (f1(p.element) > fa) {
        pocket = false;
        break;
      }
    }
    if (!pocket) continue;
    ++rep.sources;
    auto lm = local_max_from_slack(g, f2, a, reach, rep.slack);
    bool ok = true;
    const long long top = f2(lm.point);
    for (const auto& p : neighborhood(g, lm.point, lm.radius)) {
      if (!b.contains(p.element) || f2(p.element) > top) {
        ok = false;
        break;
      }
    }
    rep.pairs.push_back({a, std::move(lm), ok});
  }
  return rep;
}

}  // namespace deadend
