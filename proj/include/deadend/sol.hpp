#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "deadend/core.hpp"
#include "deadend/error.hpp"
#include "deadend/laurent.hpp"
#include "deadend/search.hpp"

namespace deadend {

// ---------------------------------------------------------------------------
// 2x2 integer algebra
// ---------------------------------------------------------------------------

struct V2 {
  long long x = 0, y = 0;
  V2 operator+(const V2& o) const { return {x + o.x, y + o.y}; }
  V2 operator-(const V2& o) const { return {x - o.x, y - o.y}; }
  V2 operator*(long long s) const { return {x * s, y * s}; }
  V2 operator-() const { return {-x, -y}; }
  bool is_zero() const { return x == 0 && y == 0; }
  friend auto operator<=>(const V2&, const V2&) = default;
};

/// [[a, b], [c, d]]
struct Mat2 {
  long long a = 1, b = 0, c = 0, d = 1;
  V2 operator*(const V2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  long long trace() const { return a + d; }
  long long det() const { return a * d - b * c; }
  long long max_abs() const {
    return std::max({std::llabs(a), std::llabs(b), std::llabs(c), std::llabs(d)});
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

}  // namespace deadend

template <>
struct std::hash<deadend::V2> {
  std::size_t operator()(const deadend::V2& v) const noexcept {
    std::size_t seed = std::hash<long long>{}(v.x);
    deadend::hash_combine(seed, std::hash<long long>{}(v.y));
    return seed;
  }
};

namespace deadend {

inline std::string render_v2(const V2& v) {
  return "[" + std::to_string(v.x) + "," + std::to_string(v.y) + "]";
}

using Real = long double;
using RVec = std::array<Real, 2>;

inline Real cross(const RVec& a, const RVec& b) { return a[0] * b[1] - a[1] * b[0]; }
inline RVec to_real(const V2& v) { return {static_cast<Real>(v.x), static_cast<Real>(v.y)}; }

// ---------------------------------------------------------------------------
// Hyperbolic matrices and eigenline geometry
// ---------------------------------------------------------------------------

/// A hyperbolic automorphism R of ℤ² with exact integer powers and its
/// eigenline data.
class HypMatrix {
 public:
  static constexpr long long kEntryLimit = 1'000'000'000'000'000LL;

  explicit HypMatrix(Mat2 r) : r_(r) {
    const long long det = r.det(), tr = r.trace();
    if (det != 1 && det != -1) throw Error(ErrorKind::NotHyperbolic, "|det R| must be 1");
    const bool hyperbolic = (det == 1 && std::llabs(tr) >= 3) || (det == -1 && std::llabs(tr) >= 1);
    if (!hyperbolic) throw Error(ErrorKind::NotHyperbolic, "R has an eigenvalue of modulus 1");
    inv_ = Mat2{det * r.d, -det * r.b, -det * r.c, det * r.a};
    const Real disc = std::sqrt(static_cast<Real>(tr * tr - 4 * det));
    tau_ = (static_cast<Real>(tr) + (tr >= 0 ? disc : -disc)) / 2;
    lambda_ = static_cast<Real>(det) / tau_;
    ve_ = eigenvector(tau_);
    vc_ = eigenvector(lambda_);
    // powers: pos_[k] = R^k, neg_[k] = R^{-k}
    pos_.push_back(Mat2{});
    neg_.push_back(Mat2{});
    while (pos_.back().max_abs() * r_.max_abs() * 2 < kEntryLimit) pos_.push_back(pos_.back() * r_);
    while (neg_.back().max_abs() * inv_.max_abs() * 2 < kEntryLimit) neg_.push_back(neg_.back() * inv_);
  }

  const Mat2& matrix() const { return r_; }
  const Mat2& inverse() const { return inv_; }
  long long trace() const { return r_.trace(); }
  long long det() const { return r_.det(); }
  /// Expanding eigenvalue (signed).
  Real tau() const { return tau_; }
  Real tau_abs() const { return std::fabs(tau_); }
  /// Contracting eigenvalue det/tau.
  Real lambda() const { return lambda_; }
  const RVec& v_e() const { return ve_; }
  const RVec& v_c() const { return vc_; }

  /// Largest |d| for which R^d is held exactly.
  long long power_limit() const {
    return static_cast<long long>(std::min(pos_.size(), neg_.size())) - 1;
  }
  const Mat2& power(long long d) const {
    const auto k = static_cast<std::size_t>(std::llabs(d));
    const auto& table = d >= 0 ? pos_ : neg_;
    if (k >= table.size()) {
      throw Error(ErrorKind::CapExceeded, "R^" + std::to_string(d) + " overflows 64-bit entries");
    }
    return table[k];
  }
  /// t^d x (gen 0) or t^d y (gen 1) as a vector.
  V2 term(long long d, int gen) const {
    const Mat2& m = power(d);
    return gen == 0 ? V2{m.a, m.c} : V2{m.b, m.d};
  }

  /// Distance to the contracting line.
  Real d_c(const RVec& z) const { return std::fabs(cross(vc_, z)); }
  /// Distance to the expanding line.
  Real d_e(const RVec& z) const { return std::fabs(cross(ve_, z)); }
  Real d_c(const V2& z) const { return d_c(to_real(z)); }
  Real d_e(const V2& z) const { return d_e(to_real(z)); }
  /// z = z_e v_e + z_c v_c
  Real z_e(const RVec& z) const { return cross(z, vc_) / cross(ve_, vc_); }
  Real z_c(const RVec& z) const { return cross(ve_, z) / cross(ve_, vc_); }

  /// Sign s of the involution t -> s/t that commutes with the ring
  /// involution tau -> det/tau.
  int involution_sign() const { return static_cast<int>(det()); }

  /// Characteristic polynomial t² - tr t + det.
  LaurentPoly char_poly() const { return LaurentPoly{{2, 1}, {1, -trace()}, {0, det()}}; }

 private:
  RVec eigenvector(Real mu) const {
    RVec v = r_.b != 0 ? RVec{static_cast<Real>(r_.b), mu - static_cast<Real>(r_.a)}
                       : RVec{mu - static_cast<Real>(r_.d), static_cast<Real>(r_.c)};
    const Real n = std::hypot(v[0], v[1]);
    v = {v[0] / n, v[1] / n};
    if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) v = {-v[0], -v[1]};
    return v;
  }

  Mat2 r_, inv_;
  Real tau_ = 0, lambda_ = 0;
  RVec ve_{}, vc_{};
  std::vector<Mat2> pos_, neg_;
};

/// Eigenline data of R; throws NotHyperbolic.
inline HypMatrix eigen_geometry(const Mat2& r) { return HypMatrix(r); }

// ---------------------------------------------------------------------------
// The group G_R
// ---------------------------------------------------------------------------

/// u c^z with u = (x, y) over a, b.
struct SolElement {
  long long x = 0, y = 0, z = 0;
  V2 u() const { return {x, y}; }
  friend auto operator<=>(const SolElement&, const SolElement&) = default;
};

}  // namespace deadend

template <>
struct std::hash<deadend::SolElement> {
  std::size_t operator()(const deadend::SolElement& e) const noexcept {
    std::size_t seed = std::hash<long long>{}(e.x);
    deadend::hash_combine(seed, std::hash<long long>{}(e.y));
    deadend::hash_combine(seed, std::hash<long long>{}(e.z));
    return seed;
  }
};

namespace deadend {

/// (u, z)(u', z') = (u + R^{-z} u', z + z'), so that c^{-1} u c = R u.
inline SolElement sol_mul(const SolElement& e1, const SolElement& e2, const HypMatrix& R) {
  V2 u = e1.u() + R.power(-e1.z) * e2.u();
  return {u.x, u.y, e1.z + e2.z};
}

inline SolElement sol_inverse(const SolElement& e, const HypMatrix& R) {
  V2 u = -(R.power(e.z) * e.u());
  return {u.x, u.y, -e.z};
}

/// G_R = ℤ² ⋊_R ℤ with generators a, b (the standard basis) and c.
class SolGroup {
 public:
  using Element = SolElement;
  explicit SolGroup(const Mat2& r) : R_(r) {}
  explicit SolGroup(HypMatrix r) : R_(std::move(r)) {}

  const GenAlphabet& alphabet() const { return alphabet_; }
  const HypMatrix& R() const { return R_; }
  Element identity() const { return {}; }
  Element multiply(const Element& e, Letter l) const {
    if (l.gen == 2) return {e.x, e.y, e.z + l.sign};
    V2 step = R_.term(-e.z, l.gen) * l.sign;
    return {e.x + step.x, e.y + step.y, e.z};
  }
  std::string render(const Element& e) const {
    return "[" + std::to_string(e.x) + "," + std::to_string(e.y) + "," + std::to_string(e.z) + "]";
  }

 private:
  HypMatrix R_;
  GenAlphabet alphabet_{std::vector<std::string>{"a", "b", "c"}};
};

/// p1 x + p2 y with t acting as R.
inline V2 apply_poly(const SupportVector& v, const HypMatrix& R) {
  V2 out;
  for (int g = 0; g < 2; ++g) {
    for (const auto& [d, c] : v[g].terms()) out = out + R.term(d, g) * c;
  }
  return out;
}

inline V2 apply_poly(const LaurentPoly& p1, const LaurentPoly& p2, const HypMatrix& R) {
  return apply_poly(SupportVector{p1, p2}, R);
}

// ---------------------------------------------------------------------------
// Lamplighter lengths and traversal words
// ---------------------------------------------------------------------------

/// 2(max'-min') + min(|z-max'|-max', |z-min'|+min') + n, with
/// max' = max(M(v), 0), min' = min(m(v), 0) and n = ‖v‖. Degrees are read as
/// cursor positions.
inline long long ll_length(const SupportVector& v, long long z) {
  const long long hi = std::max<long long>(v.top().value_or(0), 0);
  const long long lo = std::min<long long>(v.bottom().value_or(0), 0);
  return 2 * (hi - lo) + std::min(std::llabs(z - hi) - hi, std::llabs(z - lo) + lo) + v.length();
}

/// A word for (apply_poly(v), z) in G_R of length ll_length(v, -z).
/// In G_R the term t^d x is c^{-d} a c^d, so degree d sits at c-exponent -d.
inline Word traversal_word(const SupportVector& v, long long z) {
  const long long end = -z;  // final cursor position in degree coordinates
  const long long hi = std::max<long long>(v.top().value_or(0), 0);
  const long long lo = std::min<long long>(v.bottom().value_or(0), 0);
  // 0 -> hi -> lo -> end, or 0 -> lo -> hi -> end
  const bool up_first = std::llabs(end - lo) + lo <= std::llabs(end - hi) - hi;
  Word w;
  std::set<long long> done;
  long long pos = 0;
  auto emit = [&] {
    if (!done.insert(pos).second) return;
    for (int g = 0; g < 2; ++g) {
      const long long c = v[g].coeff(pos);
      auto part = power(Letter{g, 1}, c);
      w.insert(w.end(), part.begin(), part.end());
    }
  };
  auto walk = [&](long long target) {
    emit();
    while (pos != target) {
      // cursor +1 in degree is c^{-1}
      w.push_back(Letter{2, target > pos ? -1 : 1});
      pos += target > pos ? 1 : -1;
      emit();
    }
  };
  if (up_first) {
    walk(hi);
    walk(lo);
  } else {
    walk(lo);
    walk(hi);
  }
  walk(end);
  return w;
}

// ---------------------------------------------------------------------------
// Minimal representatives
// ---------------------------------------------------------------------------

/// Exact minimal-length Laurent representatives of vectors in ℤ².
///
/// Feasible(z, b): some representative of z has length <= b. A minimal one
/// has a term of degree |d| < N(z, l); removing it leaves a
/// minimal representative of z - term, so the recursion over those finitely
/// many terms is exact. Results are memoised, so one solver should be reused
/// across a ball sweep.
class MinRepSolver {
 public:
  explicit MinRepSolver(HypMatrix R) : R_(std::move(R)) {
    const RVec x{1, 0}, y{0, 1};
    kappa_ = std::max({std::fabs(R_.z_e(x)), std::fabs(R_.z_c(x)), std::fabs(R_.z_e(y)),
                       std::fabs(R_.z_c(y))});
  }

  const HypMatrix& R() const { return R_; }

  /// Distance from z_c v_c to the nearest lattice point.
  Real gap_distance(const V2& z) const {
    const Real zc = R_.z_c(to_real(z));
    const RVec p{zc * R_.v_c()[0], zc * R_.v_c()[1]};
    return std::hypot(p[0] - std::round(p[0]), p[1] - std::round(p[1]));
  }

  /// N(z, l): every length-l representative of z != 0 has a term of degree
  /// |d| < N.
  long long window(const V2& z, long long l) const {
    if (z.is_zero() || l <= 0) return 1;
    const Real D = gap_distance(z);
    const Real ratio = 2 * static_cast<Real>(l) * kappa_ / D;
    if (!(ratio > 1)) return 1;
    const long long n = static_cast<long long>(std::floor(std::log(ratio) / std::log(R_.tau_abs()))) + 1;
    return std::max<long long>(n, 1);
  }

  bool feasible(const V2& z, long long b) {
    if (z.is_zero()) return true;
    if (b <= 0) return false;
    const Key key{z.x, z.y, b};
    if (auto it = feas_.find(key); it != feas_.end()) return it->second;
    bool ok = false;
    const long long n = window(z, b);
    for (long long d = -n + 1; d < n && !ok; ++d) {
      for (int g = 0; g < 2 && !ok; ++g) {
        const V2 t = R_.term(d, g);
        ok = feasible(z - t, b - 1) || feasible(z + t, b - 1);
      }
    }
    feas_.emplace(key, ok);
    return ok;
  }

  /// Minimal total length of (p1, p2) with p1 x + p2 y = z.
  long long min_length(const V2& z, long long cap) {
    if (auto it = length_.find(z); it != length_.end()) {
      if (it->second > cap) throw cap_error(z, cap);
      return it->second;
    }
    for (long long b = 0; b <= cap; ++b) {
      if (feasible(z, b)) {
        length_.emplace(z, b);
        return b;
      }
    }
    throw cap_error(z, cap);
  }

  /// All minimal-length representatives, sorted.
  const std::vector<SupportVector>& minimal_reps(const V2& z, long long cap) {
    const long long l = min_length(z, cap);
    if (auto it = reps_.find(z); it != reps_.end()) return it->second;
    std::set<SupportVector> out;
    if (l == 0) {
      out.insert(SupportVector{});
    } else {
      const long long n = window(z, l);
      for (long long d = -n + 1; d < n; ++d) {
        for (int g = 0; g < 2; ++g) {
          for (int s : {1, -1}) {
            const V2 rest = z - R_.term(d, g) * s;
            if (!feasible(rest, l - 1)) continue;
            for (SupportVector v : minimal_reps(rest, cap)) {
              v[g].add_term(d, s);
              out.insert(std::move(v));
            }
          }
        }
      }
    }
    return reps_.emplace(z, std::vector<SupportVector>(out.begin(), out.end())).first->second;
  }

 private:
  struct Key {
    long long x, y, b;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t seed = std::hash<long long>{}(k.x);
      hash_combine(seed, std::hash<long long>{}(k.y));
      hash_combine(seed, std::hash<long long>{}(k.b));
      return seed;
    }
  };
  static Error cap_error(const V2& z, long long cap) {
    return Error(ErrorKind::CapExceeded,
                 "minimal length of " + render_v2(z) + " exceeds " + std::to_string(cap));
  }

  HypMatrix R_;
  Real kappa_ = 1;
  std::unordered_map<Key, bool, KeyHash> feas_;
  std::unordered_map<V2, long long> length_;
  std::unordered_map<V2, std::vector<SupportVector>> reps_;
};

inline std::vector<SupportVector> minimal_reps(const V2& z, const HypMatrix& R, long long l_cap) {
  if (l_cap < 1) throw Error(ErrorKind::InvalidInput, "l_cap must be >= 1");
  MinRepSolver s(R);
  return s.minimal_reps(z, l_cap);
}

// ---------------------------------------------------------------------------
// The pseudo-norm ‖g‖ and its gap to |g|
// ---------------------------------------------------------------------------

struct AbsNorm {
  long long value = 0;
  SupportVector rep;  // a minimal representative attaining it
};

/// ‖u c^z‖ = min over minimal representatives v of u of ll_length(v, -z).
inline AbsNorm abs_norm_detail(const SolElement& g, MinRepSolver& solver, long long l_cap) {
  AbsNorm best{std::numeric_limits<long long>::max(), {}};
  for (const auto& v : solver.minimal_reps(g.u(), l_cap)) {
    const long long n = ll_length(v, -g.z);
    if (n < best.value) best = {n, v};
  }
  return best;
}

inline long long abs_norm(const SolElement& g, MinRepSolver& solver, long long l_cap) {
  return abs_norm_detail(g, solver, l_cap).value;
}

inline long long abs_norm(const SolElement& g, const HypMatrix& R, long long l_cap) {
  MinRepSolver s(R);
  return abs_norm(g, s, l_cap);
}

struct GapRow {
  SolElement g;
  long long distance = 0;
  long long norm = 0;
  long long gap() const { return norm - distance; }
};

struct GapReport {
  std::vector<GapRow> rows;
  long long max_gap = 0;
  std::size_t violations = 0;  // ‖g‖ < |g|
  std::size_t skipped = 0;     // minimal length over the cap
};

inline GapReport bdiff_gap(const BallIndex<SolGroup>& b, MinRepSolver& solver, long long l_cap) {
  GapReport rep;
  rep.rows.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& g = b.elements()[i];
    long long n = 0;
    try {
      n = abs_norm(g, solver, l_cap);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      ++rep.skipped;
      continue;
    }
    GapRow row{g, b.distance_at(i), n};
    rep.max_gap = std::max(rep.max_gap, row.gap());
    if (row.gap() < 0) ++rep.violations;
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Degree spread of representatives
// ---------------------------------------------------------------------------

struct TaubdReport {
  long long min_length = 0;
  std::size_t minimal_count = 0;
  std::size_t alternatives = 0;  // non-minimal representatives sampled
  /// Infimum of admissible D2 (strict inequality: any larger value works).
  Real D2 = 1;
  /// Infimum of admissible D1 given D2.
  Real D1 = 0;
  bool satisfiable = true;
};

namespace detail {

/// (terms of degree >= m, the rest); the two parts sum to p.
inline std::pair<LaurentPoly, LaurentPoly> head_tail(const LaurentPoly& p, long long m) {
  LaurentPoly head, tail;
  for (const auto& [d, c] : p.terms()) (d >= m ? head : tail).add_term(d, c);
  return {head, tail};
}

/// Multisets of signed terms (degree window [lo, hi]) summing to z with at
/// most `max_len` terms, no term used with both signs. Stops after `limit`.
inline std::vector<SupportVector> enumerate_reps(const HypMatrix& R, const V2& z, long long lo,
                                                 long long hi, long long max_len,
                                                 std::size_t limit) {
  struct T {
    long long d;
    int g;
    V2 v;
  };
  std::vector<T> terms;
  long long reach = 0;  // largest coordinate of any single term
  for (long long d = lo; d <= hi; ++d) {
    for (int g = 0; g < 2; ++g) {
      V2 v = R.term(d, g);
      terms.push_back({d, g, v});
      reach = std::max({reach, std::llabs(v.x), std::llabs(v.y)});
    }
  }
  std::set<SupportVector> out;
  SupportVector cur;
  auto rec = [&](auto&& self, std::size_t from, V2 rest, long long left) -> void {
    if (out.size() >= limit) return;
    if (rest.is_zero()) out.insert(cur);
    if (left == 0) return;
    if (std::max(std::llabs(rest.x), std::llabs(rest.y)) > left * reach) return;
    for (std::size_t i = from; i < terms.size(); ++i) {
      const auto& t = terms[i];
      for (int s : {1, -1}) {
        const long long have = cur[t.g].coeff(t.d);
        if (have * s < 0) continue;
        cur[t.g].add_term(t.d, s);
        self(self, i, rest - t.v * s, left - 1);
        cur[t.g].add_term(t.d, -s);
      }
    }
  };
  rec(rec, 0, z, max_len);
  return {out.begin(), out.end()};
}

}  // namespace detail

/// Samples representatives v' of u up to length l(v) + 4 (at most
/// `alt_count`) and fits the smallest constants with
/// |τ|^{2M(v)-2M(v')} < D1 (l(v')-l(v)) + D2 and
/// |τ|^{2m(v')-2m(v)} < D1 (l(v')-l(v)) + D2 for every minimal v.
inline TaubdReport taubd_check(const V2& u, const HypMatrix& R, long long l_cap,
                               std::size_t alt_count) {
  TaubdReport rep;
  const Real ln_tau = std::log(R.tau_abs());
  if (u.is_zero()) {
    rep.D1 = rep.D2 * ln_tau / 4;
    return rep;
  }
  MinRepSolver solver(R);
  const auto& mins = solver.minimal_reps(u, l_cap);
  rep.min_length = mins.front().length();
  rep.minimal_count = mins.size();
  long long lo = 0, hi = 0;
  for (const auto& v : mins) {
    lo = std::min(lo, *v.bottom());
    hi = std::max(hi, *v.top());
  }
  const long long w = solver.window(u, rep.min_length + 4);
  lo = std::min(lo, -w) - 1;
  hi = std::max(hi, w) + 1;
  auto sample = detail::enumerate_reps(R, u, lo, hi, rep.min_length + 4, alt_count + mins.size());
  std::vector<std::pair<Real, long long>> pts;  // (lhs, length excess)
  for (const auto& alt : sample) {
    const long long excess = alt.length() - rep.min_length;
    if (excess > 0) ++rep.alternatives;
    for (const auto& v : mins) {
      const Real top = std::pow(R.tau_abs(), static_cast<Real>(2 * (*v.top() - *alt.top())));
      const Real bot = std::pow(R.tau_abs(), static_cast<Real>(2 * (*alt.bottom() - *v.bottom())));
      pts.push_back({std::max(top, bot), excess});
    }
  }
  for (const auto& [lhs, ex] : pts) {
    if (ex == 0) rep.D2 = std::max(rep.D2, lhs);
  }
  rep.D1 = rep.D2 * ln_tau / 4;
  for (const auto& [lhs, ex] : pts) {
    if (ex > 0) rep.D1 = std::max(rep.D1, (lhs - rep.D2) / static_cast<Real>(ex));
  }
  rep.satisfiable = std::isfinite(rep.D1) && std::isfinite(rep.D2);
  return rep;
}

// ---------------------------------------------------------------------------
// Integer expansions over powers of R
// ---------------------------------------------------------------------------

struct ExpansionTerm {
  long long m = 0;      // power of R
  long long entry = 0;  // (R^m)_{11}
  long long mult = 0;   // signed multiplicity
};

struct IntegerExpansion {
  std::vector<ExpansionTerm> terms;  // sorted by m, nonzero multiplicities
  long long sum() const {
    long long s = 0;
    for (const auto& t : terms) s += t.entry * t.mult;
    return s;
  }
  long long length() const {
    long long s = 0;
    for (const auto& t : terms) s += std::llabs(t.mult);
    return s;
  }
};

struct PowersConstants {
  Real p_e = 0, p_c = 0;
  long long C1 = 0;
  Real C2 = 0, C3 = 0;
  Real bound(long long n) const {
    if (n == 0) return static_cast<Real>(C1);
    return static_cast<Real>(C1) + std::max<Real>(0, C2 * std::log(C3 * std::fabs(static_cast<Real>(n))));
  }
};

/// Greedy digit expansion of n over S = {(R^m)_{11} : m >= 0}.
class PowersExpander {
 public:
  explicit PowersExpander(HypMatrix R) : R_(std::move(R)) {
    // e1 = alpha v_e + beta v_c; (R^m)_{11} = p_e tau^m + p_c lambda^m
    const RVec e1{1, 0};
    k_.p_e = R_.z_e(e1) * R_.v_e()[0];
    k_.p_c = R_.z_c(e1) * R_.v_c()[0];
    k_.C2 = R_.tau_abs() * (1 + std::fabs(k_.p_c)) / std::log(R_.tau_abs());
    k_.C3 = std::fabs(R_.tau_abs() / k_.p_e);
    // Base table: BFS over integers with steps ±p_m for every held power.
    base_limit_ = static_cast<long long>(std::floor(std::fabs(k_.p_e)));
    const long long span = 4 * (base_limit_ + 8);
    std::vector<long long> steps;
    for (long long m = 0; m <= R_.power_limit(); ++m) {
      const long long e = R_.power(m).a;
      if (e != 0 && std::llabs(e) <= span) steps.push_back(m);
    }
    std::map<long long, std::vector<long long>> words{{0, {}}};  // value -> multiset of m (signed as m+1)
    std::vector<long long> frontier{0};
    while (!frontier.empty()) {
      std::vector<long long> next;
      for (long long v : frontier) {
        for (long long m : steps) {
          for (int s : {1, -1}) {
            const long long n = v + s * R_.power(m).a;
            if (std::llabs(n) > span || words.count(n)) continue;
            auto w = words[v];
            w.push_back(s * (m + 1));
            words.emplace(n, std::move(w));
            next.push_back(n);
          }
        }
      }
      std::sort(next.begin(), next.end());
      frontier = std::move(next);
    }
    for (const auto& [v, w] : words) {
      if (std::llabs(v) <= base_limit_) {
        base_[v] = w;
        k_.C1 = std::max<long long>(k_.C1, static_cast<long long>(w.size()));
      }
    }
  }

  const PowersConstants& constants() const { return k_; }

  IntegerExpansion expand(long long n) const {
    std::map<long long, long long> mult;
    auto P = [&](long long m) { return k_.p_e * std::pow(R_.tau(), static_cast<Real>(m)); };
    long long m = 0;
    while (std::fabs(static_cast<Real>(n)) > std::fabs(P(m))) ++m;
    for (; m >= 1; --m) {
      // |n| <= |P(m)|: pick |k| < |tau| with |n + k P(m-1)| <= |P(m-1)|
      const Real X = P(m - 1);
      const long long k = -static_cast<long long>(std::trunc(static_cast<Real>(n) / X));
      n += k * R_.power(m - 1).a;
      mult[m - 1] -= k;  // n = (terms so far) + remainder
      // integer correction with p_0 = 1
      const Real lim = std::fabs(X);
      long long l = 0;
      if (static_cast<Real>(n) > lim) l = -static_cast<long long>(std::ceil(static_cast<Real>(n) - lim));
      if (static_cast<Real>(n) < -lim) l = static_cast<long long>(std::ceil(-lim - static_cast<Real>(n)));
      n += l;
      mult[0] -= l;
    }
    auto it = base_.find(n);
    if (it == base_.end()) throw Error(ErrorKind::BoundViolated, "expansion left the base table");
    for (long long code : it->second) mult[std::llabs(code) - 1] += code > 0 ? 1 : -1;
    IntegerExpansion out;
    for (const auto& [pm, c] : mult) {
      if (c != 0) out.terms.push_back({pm, R_.power(pm).a, c});
    }
    return out;
  }

 private:
  HypMatrix R_;
  PowersConstants k_;
  long long base_limit_ = 0;
  std::map<long long, std::vector<long long>> base_;
};

inline IntegerExpansion integer_expansion(long long n, const HypMatrix& R) {
  return PowersExpander(R).expand(n);
}

// ---------------------------------------------------------------------------
// Short words for (z, 0)
// ---------------------------------------------------------------------------

struct DistortWitness {
  SupportVector v;
  Word word;
  long long base = 0;   // |tr R|, or 3 / 6 for |tr R| = 1 / 2
  long long bound = 0;  // 2^{m+1}+4m-1, or 2^{m+1}+8m-1 for small trace
  bool within_bound = false;
};

/// The Laurent polynomial equal to `base` in Λ_R: ±(t + det/t) or t² + t⁻².
inline LaurentPoly base_poly(const HypMatrix& R) {
  const long long tr = R.trace();
  if (std::llabs(tr) <= 2) return LaurentPoly{{2, 1}, {-2, 1}};
  const long long s = tr > 0 ? 1 : -1;
  return LaurentPoly{{1, s}, {-1, s * R.det()}};
}

inline long long distort_base(const HypMatrix& R) {
  const long long tr = std::llabs(R.trace());
  return tr == 1 ? 3 : tr == 2 ? 6 : tr;
}

/// Balanced digits of z in the given base, least significant first.
inline std::vector<long long> balanced_digits(long long z, long long base) {
  std::vector<long long> out;
  while (z != 0) {
    long long d = ((z % base) + base) % base;
    if (2 * d > base) d -= base;
    out.push_back(d);
    z = (z - d) / base;
  }
  return out;
}

/// Word for (z, 0) built from balanced digits, each power of the base
/// expanded through base_poly. A greedy pass then adds multiples t^s p_R(t)
/// (which act as zero) while that shortens the traversal.
inline DistortWitness distort_witness(const V2& z, long long m, const HypMatrix& R) {
  const long long base = distort_base(R);
  long long cap = 1;
  for (long long i = 0; i < m; ++i) cap *= base;
  if (m < 0 || std::llabs(z.x) >= cap || std::llabs(z.y) >= cap) {
    throw Error(ErrorKind::OutOfBox, "|z_i| must be < " + std::to_string(base) + "^" + std::to_string(m));
  }
  DistortWitness out;
  out.base = base;
  out.bound = (2LL << m) + (std::llabs(R.trace()) <= 2 ? 8 : 4) * m - 1;
  const LaurentPoly bp = base_poly(R);
  for (int g = 0; g < 2; ++g) {
    const auto digits = balanced_digits(g == 0 ? z.x : z.y, base);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      out.v[g] += digits[i] * bp.pow(static_cast<unsigned>(i));
    }
  }
  const LaurentPoly pr = R.char_poly();
  auto cost = [](const SupportVector& v) { return ll_length(v, 0); };
  for (bool improved = true; improved;) {
    improved = false;
    long long best = cost(out.v);
    SupportVector best_v = out.v;
    const long long lo = out.v.bottom().value_or(0) - 3, hi = out.v.top().value_or(0) + 1;
    for (int g = 0; g < 2; ++g) {
      for (long long s = lo; s <= hi; ++s) {
        for (long long sign : {1, -1}) {
          SupportVector cand = out.v;
          cand[g] += sign * pr.shift(s);
          if (long long c = cost(cand); c < best) {
            best = c;
            best_v = std::move(cand);
            improved = true;
          }
        }
      }
    }
    out.v = std::move(best_v);
  }
  if (apply_poly(out.v, R) != z) throw Error(ErrorKind::BoundViolated, "distort construction is wrong");
  out.word = traversal_word(out.v, 0);
  out.within_bound = static_cast<long long>(out.word.size()) <= out.bound;
  return out;
}

// ---------------------------------------------------------------------------
// Flat dead-end candidates
// ---------------------------------------------------------------------------

struct FlatParams {
  /// Lower constant for the pseudo-norm; a conservative value is derived from R if absent.
  std::optional<Real> C2;
};

struct FlatCandidates {
  long long base = 0;
  long long L = 0;
  Real C2 = 0;
  Real rho = 0;  // eigenline constant max(d_c(x),d_c(y),d_e(x),d_e(y)) / min(d_c(x),d_e(x))
  std::vector<long long> K;
  std::vector<SolElement> elements;  // K x c^0
  Real dc_threshold = 0, de_threshold = 0;
  long long box = 0;  // |i|, |j| < box

  /// Membership in B_{m,n}.
  bool contains(const V2& u, const HypMatrix& R) const {
    return std::llabs(u.x) < box && std::llabs(u.y) < box && R.d_c(u) > dc_threshold &&
           R.d_e(u) > de_threshold;
  }
};

inline Real default_flat_c2(const HypMatrix& R) {
  const Real t = R.tau_abs();
  return static_cast<Real>(std::llabs(R.trace()) + 2) * t / (t - 1);
}

/// K x for every K with (L + 2 C2 |τ|^n) rho < K < base^m - L, with L the
/// largest value admitting such a K.
inline FlatCandidates flat_candidates(const HypMatrix& R, long long m, long long n,
                                      const FlatParams& params = {}) {
  FlatCandidates out;
  out.base = std::llabs(R.trace()) == 1 ? 3 : std::llabs(R.trace()) == 2 ? 6 : std::llabs(R.trace());
  out.C2 = params.C2.value_or(default_flat_c2(R));
  const V2 x{1, 0}, y{0, 1};
  const Real dcx = R.d_c(x), dcy = R.d_c(y), dex = R.d_e(x), dey = R.d_e(y);
  out.rho = std::max({dcx, dcy, dex, dey}) / std::min(dcx, dex);
  const Real scale = 2 * out.C2 * std::pow(R.tau_abs(), static_cast<Real>(n));
  out.dc_threshold = scale * std::max(dcx, dcy);
  out.de_threshold = scale * std::max(dex, dey);
  long long top = 1;
  for (long long i = 0; i < m; ++i) {
    if (top > std::numeric_limits<long long>::max() / out.base) throw Error(ErrorKind::InvalidInput, "m too large");
    top *= out.base;
  }
  out.box = top;
  auto k_range = [&](long long L) {
    const long long lo = static_cast<long long>(std::floor((static_cast<Real>(L) + scale) * out.rho)) + 1;
    const long long hi = top - L - 1;
    return std::pair{lo, hi};
  };
  long long L = -1;
  for (long long c = 1; c < top; ++c) {
    auto [lo, hi] = k_range(c);
    if (lo > hi) break;
    L = c;
  }
  if (L < 1) throw Error(ErrorKind::NoFeasibleK, "no K, L for m=" + std::to_string(m));
  out.L = L;
  auto [lo, hi] = k_range(L);
  for (long long k = lo; k <= hi; ++k) {
    out.K.push_back(k);
    out.elements.push_back({k, 0, 0});
  }
  return out;
}

struct FlatValidation {
  SolElement candidate;
  std::optional<DepthReport<SolGroup>> dead_end;  // nearest one found
  long long offset = 0;                           // its distance from the candidate
};

/// Looks for an element of depth >= min_depth within `search_radius` of each
/// candidate, nearest first. Candidates outside the ball are skipped.
inline std::vector<FlatValidation> validate_flat_candidates(const SolGroup& G,
                                                            const BallIndex<SolGroup>& b,
                                                            const FlatCandidates& fc,
                                                            long long search_radius,
                                                            long long min_depth = 2) {
  std::vector<FlatValidation> out;
  for (const auto& c : fc.elements) {
    if (!b.contains(c)) continue;
    FlatValidation v{c, std::nullopt, 0};
    detail::sweep_visit(G, c, search_radius, kDefaultElementBudget, [&](const SolElement& e, long long d) {
      auto de = b.find(e);
      if (!de || *de + min_depth - 1 > b.radius()) return true;
      auto rep = depth(G, e, b, min_depth - 1);
      if (rep.depth >= min_depth) {
        v.dead_end = rep;
        v.offset = d;
        return false;
      }
      return true;
    });
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace deadend
