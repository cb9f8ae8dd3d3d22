#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "deadend/abelian.hpp"
#include "deadend/core.hpp"
#include "deadend/error.hpp"
#include "deadend/search.hpp"

namespace deadend {

using IntMatrix = std::vector<std::vector<long long>>;

inline IntMatrix mat_identity(std::size_t n) {
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline ZVec mat_apply(const IntMatrix& a, const ZVec& v) {
  ZVec r{std::vector<long long>(v.size(), 0)};
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

/// One generator of ℤⁿ⋊P: the affine map x -> A x + t.
struct AffineGen {
  ZVec t;
  IntMatrix A;
};

struct EuclideanSpec {
  int n = 0;
  std::vector<AffineGen> gens;
  /// Optional explicit point group; when present it must equal the group
  /// generated by the generator matrices.
  std::vector<IntMatrix> point_group;
  /// Optional coset representatives as words over `gens`; shortlex-least
  /// words are chosen when absent.
  std::vector<Word> coset_reps;
};

struct EucElement {
  ZVec t;
  int p = 0;  // index into the point group

  friend auto operator<=>(const EucElement&, const EucElement&) = default;
  friend bool operator==(const EucElement&, const EucElement&) = default;
};

}  // namespace deadend

template <>
struct std::hash<deadend::EucElement> {
  std::size_t operator()(const deadend::EucElement& e) const noexcept {
    std::size_t seed = std::hash<deadend::ZVec>{}(e.t);
    deadend::hash_combine(seed, static_cast<std::size_t>(e.p));
    return seed;
  }
};

namespace deadend {

/// ℤⁿ⋊P with elements (t, A) acting by x -> A x + t, so
/// (t1, A1)(t2, A2) = (t1 + A1 t2, A1 A2).
class EuclideanGroup {
 public:
  using Element = EucElement;
  static constexpr std::size_t kMaxPointGroup = 4096;

  explicit EuclideanGroup(EuclideanSpec spec) : spec_(std::move(spec)) {
    const auto n = static_cast<std::size_t>(spec_.n);
    if (spec_.n < 1 || spec_.gens.empty()) throw Error(ErrorKind::InvalidInput, "empty euclidean spec");
    for (const auto& g : spec_.gens) {
      if (g.t.size() != n || g.A.size() != n) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
      for (const auto& row : g.A) {
        if (row.size() != n) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
      }
      long long d = detail::det_int(g.A);
      if (d != 1 && d != -1) throw Error(ErrorKind::NotEuclidean, "generator matrix is not unimodular");
    }
    // Point group by closure, recording shortlex-least words.
    mats_.push_back(mat_identity(n));
    index_.emplace(mats_[0], 0);
    words_.push_back({});
    for (std::size_t q = 0; q < mats_.size(); ++q) {
      for (int gi = 0; gi < static_cast<int>(spec_.gens.size()); ++gi) {
        IntMatrix m = mat_mul(mats_[q], spec_.gens[static_cast<std::size_t>(gi)].A);
        if (index_.count(m)) continue;
        if (mats_.size() >= kMaxPointGroup) {
          throw Error(ErrorKind::NotEuclidean, "point group is infinite or too large");
        }
        index_.emplace(m, static_cast<int>(mats_.size()));
        mats_.push_back(m);
        Word w = words_[q];
        w.push_back({gi, 1});
        words_.push_back(w);
      }
    }
    if (!spec_.point_group.empty()) {
      std::vector<IntMatrix> given = spec_.point_group, got = mats_;
      std::sort(given.begin(), given.end());
      given.erase(std::unique(given.begin(), given.end()), given.end());
      std::sort(got.begin(), got.end());
      if (given != got) throw Error(ErrorKind::NotEuclidean, "listed point group is not the generated one");
    }
    for (int gi = 0; gi < static_cast<int>(spec_.gens.size()); ++gi) {
      const auto& g = spec_.gens[static_cast<std::size_t>(gi)];
      int p = index_.at(g.A);
      gen_elems_.push_back({g.t, p});
    }
    for (const auto& g : gen_elems_) gen_inverses_.push_back(invert(g));
    alphabet_ = GenAlphabet::standard(static_cast<int>(spec_.gens.size()));
    if (spec_.coset_reps.empty()) {
      spec_.coset_reps = words_;
    } else {
      std::set<int> hit;
      for (const auto& w : spec_.coset_reps) hit.insert(evaluate(*this, w).p);
      if (hit.size() != mats_.size() || spec_.coset_reps.size() != mats_.size()) {
        throw Error(ErrorKind::InvalidInput, "coset representatives must hit each coset once");
      }
    }
  }

  const GenAlphabet& alphabet() const { return alphabet_; }
  const EuclideanSpec& spec() const { return spec_; }
  std::size_t index() const { return mats_.size(); }
  const IntMatrix& matrix(int p) const { return mats_[static_cast<std::size_t>(p)]; }
  int identity_index() const { return 0; }

  Element identity() const { return {ZVec{std::vector<long long>(static_cast<std::size_t>(spec_.n), 0)}, 0}; }

  Element mul(const Element& a, const Element& b) const {
    return {a.t + mat_apply(matrix(a.p), b.t), index_.at(mat_mul(matrix(a.p), matrix(b.p)))};
  }

  Element invert(const Element& a) const {
    // (t, A)^{-1} = (-A^{-1} t, A^{-1})
    int inv = -1;
    for (std::size_t q = 0; q < mats_.size() && inv < 0; ++q) {
      if (mat_mul(matrix(a.p), mats_[q]) == mats_[0]) inv = static_cast<int>(q);
    }
    return {-mat_apply(matrix(inv), a.t), inv};
  }

  Element multiply(const Element& e, Letter l) const {
    const auto& g = l.sign > 0 ? gen_elems_[static_cast<std::size_t>(l.gen)]
                               : gen_inverses_[static_cast<std::size_t>(l.gen)];
    return mul(e, g);
  }

  std::string render(const Element& e) const {
    return "[" + render_vec(e.t.x) + "," + std::to_string(e.p) + "]";
  }

 private:
  EuclideanSpec spec_;
  std::vector<IntMatrix> mats_;
  std::map<IntMatrix, int> index_;
  std::vector<Word> words_;
  std::vector<Element> gen_elems_, gen_inverses_;
  GenAlphabet alphabet_;
};

/// The weighted set B of conjugates of A' with weights l(w), together with the
/// words that produced each entry.
struct ReducedSet {
  WeightedGenSet ws;
  std::vector<Word> words;  // one word per entry of ws.gens
  long long D = 0;          // 2 * sum of coset representative lengths
};

inline ReducedSet euclidean_reduce(const EuclideanGroup& E) {
  const auto m = E.index();
  const auto letters = E.alphabet().letters();
  std::map<ZVec, std::pair<long long, Word>> best;  // canonical sign -> weight, word

  auto canonical = [](ZVec v) {
    for (long long c : v.x) {
      if (c != 0) return c < 0 ? -v : v;
    }
    return v;
  };
  auto record = [&](const ZVec& v, const Word& w) {
    if (v.is_zero()) return;
    ZVec key = canonical(v);
    auto weight = static_cast<long long>(w.size());
    auto it = best.find(key);
    if (it == best.end() || weight < it->second.first) best[key] = {weight, w};
  };

  // DFS over words whose proper prefixes lie in distinct non-trivial cosets.
  Word w;
  std::vector<int> prefix{E.identity_index()};
  std::vector<EucElement> value{E.identity()};
  auto dfs = [&](auto&& self) -> void {
    for (Letter l : letters) {
      EucElement next = E.multiply(value.back(), l);
      w.push_back(l);
      if (next.p == E.identity_index()) {
        for (const auto& rep : E.spec().coset_reps) {
          // conjugate w_i^{-1} x w_i of the translation x
          EucElement r = evaluate(E, rep);
          EucElement c = E.mul(E.mul(E.invert(r), next), r);
          record(c.t, w);
        }
      } else if (w.size() < m &&
                 std::find(prefix.begin(), prefix.end(), next.p) == prefix.end()) {
        prefix.push_back(next.p);
        value.push_back(next);
        self(self);
        prefix.pop_back();
        value.pop_back();
      }
      w.pop_back();
    }
  };
  dfs(dfs);

  ReducedSet out;
  out.ws.n = E.spec().n;
  for (const auto& [v, ww] : best) {
    out.ws.gens.push_back({v, ww.first});
    out.words.push_back(ww.second);
  }
  std::vector<ZVec> vs;
  for (const auto& g : out.ws.gens) vs.push_back(g.v);
  if (vs.empty() || !generates_lattice(out.ws.n, vs)) {
    throw Error(ErrorKind::NotEuclidean, "translations do not form Z^" + std::to_string(out.ws.n));
  }
  for (const auto& rep : E.spec().coset_reps) out.D += 2 * static_cast<long long>(rep.size());
  return out;
}

struct SandwichReport {
  long long formula_D = 0;
  long long observed_D = 0;  // max |x|_E - ||x||_B
  std::size_t checked = 0;
  std::size_t lower_violations = 0;  // ||x||_B > |x|_E
  std::size_t upper_violations = 0;  // |x|_E > ||x||_B + D
  bool ok() const { return lower_violations == 0 && upper_violations == 0; }
};

/// Compares the word metric of E on translations with the weighted metric of
/// the reduced set, in both directions, inside radius r.
inline SandwichReport sandwich_check(const EuclideanGroup& E, long long r) {
  const auto red = euclidean_reduce(E);
  WeightedZn Z(red.ws);
  const auto be = ball(E, r);
  const auto bz = ball(Z, r);
  SandwichReport rep;
  rep.formula_D = red.D;
  auto tally = [&](long long de, long long dz) {
    ++rep.checked;
    rep.observed_D = std::max(rep.observed_D, de - dz);
    if (dz > de) ++rep.lower_violations;
    if (de > dz + red.D) ++rep.upper_violations;
  };
  for (std::size_t i = 0; i < be.size(); ++i) {
    const auto& e = be.elements()[i];
    if (e.p != E.identity_index()) continue;
    // ||x||_B <= |x|_E <= r, so x is in the weighted ball when the bound holds
    auto dz = bz.find(e.t);
    tally(be.distance_at(i), dz ? *dz : r + 1);
  }
  for (std::size_t i = 0; i < bz.size(); ++i) {
    const long long dz = bz.distance_at(i);
    if (dz + red.D > r) continue;
    auto de = be.find(EucElement{bz.elements()[i], E.identity_index()});
    if (!de) {
      ++rep.checked;
      ++rep.upper_violations;
    }
  }
  return rep;
}

}  // namespace deadend
