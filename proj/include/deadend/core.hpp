#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "deadend/error.hpp"

namespace deadend {

// ---------------------------------------------------------------------------
// Letters and words
// ---------------------------------------------------------------------------

/// A signed generator letter: generator index plus exponent +1 or -1.
struct Letter {
  int gen = 0;
  int sign = 1;

  constexpr Letter inverse() const { return {gen, -sign}; }
  /// Dense code 2*gen (+1 for inverse letters), handy for transition tables.
  constexpr int code() const { return 2 * gen + (sign < 0 ? 1 : 0); }
  static constexpr Letter from_code(int code) { return {code / 2, (code % 2) ? -1 : 1}; }

  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word power(Letter l, long long exponent) {
  if (exponent < 0) {
    l = l.inverse();
    exponent = -exponent;
  }
  return Word(static_cast<std::size_t>(exponent), l);
}

/// Generator labels. Letters are rendered "a" / "a-" and parsed the same way
/// (whitespace separated).
class GenAlphabet {
 public:
  GenAlphabet() = default;
  explicit GenAlphabet(std::vector<std::string> names) : names_(std::move(names)) {}

  static GenAlphabet standard(int k) {
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back(default_name(i));
    return GenAlphabet(std::move(names));
  }

  int size() const { return static_cast<int>(names_.size()); }
  int letter_count() const { return 2 * size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool contains(Letter l) const { return l.gen >= 0 && l.gen < size() && (l.sign == 1 || l.sign == -1); }

  void check(Letter l) const {
    if (!contains(l)) {
      throw Error(ErrorKind::UnknownLetter,
                  "letter index " + std::to_string(l.gen) + " outside alphabet of size " +
                      std::to_string(size()));
    }
  }

  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    for (int i = 0; i < size(); ++i) {
      out.push_back({i, 1});
      out.push_back({i, -1});
    }
    return out;
  }

  std::string render(Letter l) const {
    check(l);
    return names_[static_cast<std::size_t>(l.gen)] + (l.sign < 0 ? "-" : "");
  }

  std::string render(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ' ';
      out += render(w[i]);
    }
    return out;
  }

  Letter parse_letter(std::string_view token) const {
    int sign = 1;
    if (!token.empty() && token.back() == '-') {
      sign = -1;
      token.remove_suffix(1);
    }
    for (int i = 0; i < size(); ++i) {
      if (names_[static_cast<std::size_t>(i)] == token) return {i, sign};
    }
    throw Error(ErrorKind::UnknownLetter, "unknown letter '" + std::string(token) + "'");
  }

  Word parse(std::string_view text) const {
    Word out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) out.push_back(parse_letter(tok));
    return out;
  }

 private:
  static std::string default_name(int i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "g" + std::to_string(i);
  }

  std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// The marked-group capability
// ---------------------------------------------------------------------------

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

template <class T>
concept Hashable = requires(const T& t) {
  { std::hash<T>{}(t) } -> std::convertible_to<std::size_t>;
};

/// A group with a finite symmetric generating set. Elements are immutable
/// normal-form values; equality of elements is equality of normal forms, so
/// the element doubles as its own canonical key.
template <class G>
concept MarkedGroup = requires(const G& g, const typename G::Element& e, Letter l) {
  typename G::Element;
  { g.alphabet() } -> std::convertible_to<const GenAlphabet&>;
  { g.identity() } -> std::same_as<typename G::Element>;
  { g.multiply(e, l) } -> std::same_as<typename G::Element>;
  { g.render(e) } -> std::convertible_to<std::string>;
} && std::totally_ordered<typename G::Element> && Hashable<typename G::Element>;

/// Groups whose letters carry positive integer weights (word length is the
/// total weight).
template <class G>
concept WeightedGroup = MarkedGroup<G> && requires(const G& g, Letter l) {
  { g.weight(l) } -> std::convertible_to<long long>;
};

template <MarkedGroup G>
long long letter_weight(const G& g, Letter l) {
  if constexpr (WeightedGroup<G>) {
    return g.weight(l);
  } else {
    (void)g;
    (void)l;
    return 1;
  }
}

template <MarkedGroup G>
long long word_weight(const G& g, const Word& w) {
  long long total = 0;
  for (Letter l : w) total += letter_weight(g, l);
  return total;
}

template <MarkedGroup G>
typename G::Element evaluate_from(const G& g, typename G::Element e, const Word& w) {
  for (Letter l : w) {
    g.alphabet().check(l);
    e = g.multiply(e, l);
  }
  return e;
}

template <MarkedGroup G>
typename G::Element evaluate(const G& g, const Word& w) {
  return evaluate_from(g, g.identity(), w);
}

}  // namespace deadend
