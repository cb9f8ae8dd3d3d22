#pragma once

#include <string>
#include <vector>

#include "deadend/core.hpp"
#include "deadend/error.hpp"

namespace deadend {

/// Freely reduced word.
struct FreeElement {
  Word w;
  friend auto operator<=>(const FreeElement&, const FreeElement&) = default;
};

}  // namespace deadend

template <>
struct std::hash<deadend::FreeElement> {
  std::size_t operator()(const deadend::FreeElement& e) const noexcept {
    std::size_t seed = e.w.size();
    for (auto l : e.w) deadend::hash_combine(seed, static_cast<std::size_t>(l.code()));
    return seed;
  }
};

namespace deadend {

/// The free group F_k on a, b, ...
class FreeGroup {
 public:
  using Element = FreeElement;
  explicit FreeGroup(int rank) : alphabet_(GenAlphabet::standard(rank)) {
    if (rank < 1) throw Error(ErrorKind::InvalidInput, "rank must be >= 1");
  }
  const GenAlphabet& alphabet() const { return alphabet_; }
  int rank() const { return alphabet_.size(); }
  Element identity() const { return {}; }
  Element multiply(const Element& e, Letter l) const {
    Element r = e;
    if (!r.w.empty() && r.w.back() == l.inverse()) r.w.pop_back();
    else r.w.push_back(l);
    return r;
  }
  std::string render(const Element& e) const { return "\"" + alphabet_.render(e.w) + "\""; }

 private:
  GenAlphabet alphabet_;
};

}  // namespace deadend
