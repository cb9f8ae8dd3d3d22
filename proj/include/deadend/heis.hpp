#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "deadend/core.hpp"
#include "deadend/error.hpp"
#include "deadend/search.hpp"

namespace deadend {

/// a^i b^j [a,b]^k, with [a,b] = a^{-1} b^{-1} a b.
struct HeisElement {
  long long i = 0, j = 0, k = 0;
  friend auto operator<=>(const HeisElement&, const HeisElement&) = default;
};

}  // namespace deadend

template <>
struct std::hash<deadend::HeisElement> {
  std::size_t operator()(const deadend::HeisElement& e) const noexcept {
    std::size_t seed = std::hash<long long>{}(e.i);
    deadend::hash_combine(seed, std::hash<long long>{}(e.j));
    deadend::hash_combine(seed, std::hash<long long>{}(e.k));
    return seed;
  }
};

namespace deadend {

inline constexpr Letter kA{0, 1}, kAinv{0, -1}, kB{1, 1}, kBinv{1, -1};

inline HeisElement heis_step(const HeisElement& e, Letter l) {
  if (l.gen == 1) return {e.i, e.j + l.sign, e.k};
  if (l.sign > 0) return {e.i + 1, e.j, e.k - e.j};
  return {e.i - 1, e.j, e.k + e.j};
}

inline HeisElement heis_mul(const HeisElement& x, const HeisElement& y) {
  return {x.i + y.i, x.j + y.j, x.k + y.k - x.j * y.i};
}

inline HeisElement heis_inverse(const HeisElement& x) { return {-x.i, -x.j, -x.k - x.i * x.j}; }

class Heisenberg {
 public:
  using Element = HeisElement;
  const GenAlphabet& alphabet() const { return alphabet_; }
  Element identity() const { return {}; }
  Element multiply(const Element& e, Letter l) const {
    alphabet_.check(l);
    return heis_step(e, l);
  }
  std::string render(const Element& e) const {
    return "[" + std::to_string(e.i) + "," + std::to_string(e.j) + "," + std::to_string(e.k) + "]";
  }

 private:
  GenAlphabet alphabet_{std::vector<std::string>{"a", "b"}};
};

/// Commutator word a^{-1} b^{-1} a b.
inline Word commutator_word() { return {kAinv, kBinv, kA, kB}; }

/// a^i b^j [a,b]^k spelled out letter by letter.
inline Word normal_form_word(const HeisElement& e) {
  Word w = concat(power(kA, e.i), power(kB, e.j));
  Word c = e.k >= 0 ? commutator_word() : word_inverse(commutator_word());
  for (long long t = 0; t < std::llabs(e.k); ++t) w.insert(w.end(), c.begin(), c.end());
  return w;
}

/// Lattice path of a word over {a, b}: a moves along the first axis.
inline std::vector<std::array<long long, 2>> lattice_path(const Word& w) {
  std::vector<std::array<long long, 2>> pts{{0, 0}};
  for (Letter l : w) {
    if (l.gen < 0 || l.gen > 1) throw Error(ErrorKind::UnknownLetter, "Heisenberg letters are a, b");
    auto p = pts.back();
    p[static_cast<std::size_t>(l.gen)] += l.sign;
    pts.push_back(p);
  }
  return pts;
}

/// Endpoint plus the shoelace area of the path closed by b^{-j} a^{-i}.
/// Counterclockwise is positive, so a^{-1} b^{-1} a b has area 1.
inline HeisElement word_area_normal(const Word& w) {
  auto pts = lattice_path(w);
  const auto end = pts.back();
  pts.push_back({end[0], 0});
  pts.push_back({0, 0});
  long long twice = 0;
  for (std::size_t t = 0; t + 1 < pts.size(); ++t) {
    twice += pts[t][0] * pts[t + 1][1] - pts[t + 1][0] * pts[t][1];
  }
  return {end[0], end[1], twice / 2};
}

/// a^{-n-1} b^{-1} a b^{-n+1} a^n b^n, of length 4n+2, representing [a,b]^{n²+1}.
inline Word dd_witness(long long n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
  Word w = power(kA, -n - 1);
  w.push_back(kBinv);
  w.push_back(kA);
  for (const auto& part : {power(kB, -n + 1), power(kA, n), power(kB, n)}) {
    w.insert(w.end(), part.begin(), part.end());
  }
  return w;
}

inline HeisElement dd_element(long long n) { return {0, 0, n * n + 1}; }

namespace detail {

/// A signed permutation of {a, b}; each one extends to an automorphism of H
/// that preserves word length.
struct LetterMap {
  std::array<Letter, 2> image;
  Word apply(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
      Letter t = image[static_cast<std::size_t>(l.gen)];
      out.push_back(l.sign > 0 ? t : t.inverse());
    }
    return out;
  }
  LetterMap inverse() const {
    LetterMap r{};
    for (int g = 0; g < 2; ++g) {
      Letter t = image[static_cast<std::size_t>(g)];
      r.image[static_cast<std::size_t>(t.gen)] = Letter{g, t.sign};
    }
    return r;
  }
};

inline std::vector<LetterMap> signed_permutations() {
  std::vector<LetterMap> out;
  for (int swap = 0; swap < 2; ++swap)
    for (int sa : {1, -1})
      for (int sb : {1, -1}) out.push_back({{Letter{swap, sa}, Letter{1 - swap, sb}}});
  return out;
}

/// The construction itself, valid for i >= |j|, i <= n+1, 0 <= k < n(n+1).
inline std::optional<Word> nd_core(const HeisElement& e, long long n) {
  if (e.i < std::llabs(e.j) || e.i > n + 1 || e.k < 0 || e.k >= n * (n + 1)) return std::nullopt;
  const long long q = e.k / (n + 1), r = e.k % (n + 1);
  Word w;
  for (const auto& part : {power(kB, -q - 1), power(kA, r), power(kB, 1), power(kA, n + 1 - r),
                           power(kB, q), power(kA, e.i - n - 1), power(kB, e.j)}) {
    w.insert(w.end(), part.begin(), part.end());
  }
  return w;
}

}  // namespace detail

/// Word of length <= 4n+2 for a^i b^j [a,b]^k with |i|, |j| < n and
/// |k| < n(n+1). The loop construction needs i >= |j| and k >= 0; other
/// elements are first moved there by a signed permutation of the generators,
/// possibly composed with inversion, and the word is mapped back.
inline Word nd_witness(long long i, long long j, long long k, long long n) {
  if (n < 1 || std::llabs(i) >= n || std::llabs(j) >= n || std::llabs(k) >= n * (n + 1)) {
    throw Error(ErrorKind::OutOfBox, "element outside the box |i|,|j| < n, |k| < n(n+1)");
  }
  const HeisElement g{i, j, k};
  if (g == HeisElement{}) return {};
  const Word g_word = normal_form_word(g);
  for (const auto& sigma : detail::signed_permutations()) {
    for (bool invert : {false, true}) {
      HeisElement h = word_area_normal(sigma.apply(g_word));
      if (invert) h = heis_inverse(h);
      auto w = detail::nd_core(h, n);
      if (!w) continue;
      Word out = invert ? word_inverse(*w) : *w;
      out = sigma.inverse().apply(out);
      if (word_area_normal(out) != g || static_cast<long long>(out.size()) > 4 * n + 2) {
        throw Error(ErrorKind::BoundViolated, "nd construction failed to verify");
      }
      return out;
    }
  }
  throw Error(ErrorKind::OutOfBox, "no symmetry reaches the construction's region");
}

/// |i| <= m, |j| <= m, |k| <= n²+1+m(m-1)/2.
struct NhBox {
  long long m = 0, n = 0;
  long long k_bound() const { return n * n + 1 + m * (m - 1) / 2; }
  bool operator()(const HeisElement& e) const {
    return std::llabs(e.i) <= m && std::llabs(e.j) <= m && std::llabs(e.k) <= k_bound();
  }
};

inline NhBox nh_box(long long m, long long n) {
  if (m < 0) throw Error(ErrorKind::InvalidInput, "m must be >= 0");
  return {m, n};
}

struct NhCheck {
  std::size_t checked = 0;
  std::vector<HeisElement> outside;
};

/// Every element within distance m of [a,b]^{n²+1} against the box.
inline NhCheck nh_check(long long m, long long n) {
  Heisenberg H;
  const auto box = nh_box(m, n);
  NhCheck out;
  for (const auto& r : neighborhood(H, dd_element(n), m)) {
    ++out.checked;
    if (!box(r.element)) out.outside.push_back(r.element);
  }
  return out;
}

/// ceil(sqrt(2n-4) + 1), computed exactly.
inline long long heis_depth_bound(long long n) {
  const long long s = 2 * n - 4;
  long long r = static_cast<long long>(std::sqrt(static_cast<long double>(s)));
  while (r * r > s) --r;
  while ((r + 1) * (r + 1) <= s) ++r;
  return (r * r == s ? r : r + 1) + 1;
}

/// Depth lower bound from the two box propositions alone: if m < n and
/// m(m-1) < 2n-2, every element within m of g_n is in the nd box, hence no
/// farther than g_n, so depth >= m+1.
inline long long heis_box_depth_bound(long long n) {
  long long m = 0;
  while (m + 1 < n && (m + 1) * m < 2 * n - 2) ++m;
  return m + 1;
}

struct HeisFamilyRow {
  long long n = 0;
  long long distance = 0;       // oracle distance of g_n
  long long bound = 0;          // ceil(sqrt(2n-4)+1)
  long long box_bound = 0;      // from nd/nh without search
  DepthReport<Heisenberg> report;
  bool ok() const {
    return distance == 4 * n + 2 && report.depth >= bound && report.depth >= box_bound;
  }
};

inline HeisFamilyRow heis_family(long long n, const BallIndex<Heisenberg>& b, long long cap) {
  if (n <= 2) throw Error(ErrorKind::HypothesisViolated, "the family needs n > 2");
  Heisenberg H;
  HeisFamilyRow row;
  row.n = n;
  row.bound = heis_depth_bound(n);
  row.box_bound = heis_box_depth_bound(n);
  row.report = depth(H, dd_element(n), b, cap);
  row.distance = row.report.distance_from_identity;
  return row;
}

}  // namespace deadend
