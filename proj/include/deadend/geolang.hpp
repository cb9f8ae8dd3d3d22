#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "deadend/core.hpp"
#include "deadend/error.hpp"
#include "deadend/search.hpp"

namespace deadend {

/// Deterministic automaton over signed letters; a missing transition rejects.
class Dfa {
 public:
  Dfa() = default;
  Dfa(int states, int start, int generators)
      : states_(states), start_(start), generators_(generators),
        accept_(static_cast<std::size_t>(states), false),
        table_(static_cast<std::size_t>(states) * static_cast<std::size_t>(2 * generators), -1) {
    if (states < 1 || start < 0 || start >= states) throw Error(ErrorKind::InvalidInput, "bad DFA shape");
  }

  int states() const { return states_; }
  int start() const { return start_; }
  int generators() const { return generators_; }
  bool accepting(int s) const { return accept_[static_cast<std::size_t>(s)]; }
  void set_accepting(int s, bool on = true) {
    check_state(s);
    accept_[static_cast<std::size_t>(s)] = on;
  }

  void set_transition(int from, Letter l, int to) {
    check_state(from);
    check_state(to);
    if (l.gen < 0 || l.gen >= generators_) throw Error(ErrorKind::UnknownLetter, "letter outside the DFA alphabet");
    int& slot = table_[slot_index(from, l)];
    if (slot >= 0 && slot != to) throw Error(ErrorKind::InvalidInput, "nondeterministic transition");
    slot = to;
  }

  std::optional<int> next(int s, Letter l) const {
    if (l.gen < 0 || l.gen >= generators_) return std::nullopt;
    int t = table_[slot_index(s, l)];
    if (t < 0) return std::nullopt;
    return t;
  }

  struct Transition {
    int from;
    Letter letter;
    int to;
  };
  std::vector<Transition> transitions() const {
    std::vector<Transition> out;
    for (int s = 0; s < states_; ++s) {
      for (int c = 0; c < 2 * generators_; ++c) {
        Letter l = Letter::from_code(c);
        if (auto t = next(s, l)) out.push_back({s, l, *t});
      }
    }
    return out;
  }

 private:
  void check_state(int s) const {
    if (s < 0 || s >= states_) throw Error(ErrorKind::InvalidInput, "state out of range");
  }
  std::size_t slot_index(int s, Letter l) const {
    return static_cast<std::size_t>(s) * static_cast<std::size_t>(2 * generators_) +
           static_cast<std::size_t>(l.code());
  }

  int states_ = 0, start_ = 0, generators_ = 0;
  std::vector<bool> accept_;
  std::vector<int> table_;
};

struct DfaRun {
  std::vector<int> trace;  // states visited; |w|+1 entries unless rejected early
  std::optional<int> final_state;
  bool accepted = false;
};

inline DfaRun dfa_run(const Dfa& dfa, const Word& w) {
  DfaRun r;
  r.trace.push_back(dfa.start());
  for (Letter l : w) {
    auto t = dfa.next(r.trace.back(), l);
    if (!t) return r;
    r.trace.push_back(*t);
  }
  r.final_state = r.trace.back();
  r.accepted = dfa.accepting(*r.final_state);
  return r;
}

struct Pump {
  Word a, b, c;
  Word pumped() const { return concat(concat(concat(a, b), b), c); }
};

/// w = abc with |bc| <= n and |b| > 0, from a repeated state among the last
/// n+1 trace entries. The latest repetition wins (largest j, then largest i).
inline Pump pump_decompose(const Dfa& dfa, const Word& w) {
  const auto n = static_cast<std::size_t>(dfa.states());
  if (w.size() < n) throw Error(ErrorKind::TooShort, "word shorter than the state count");
  const auto run = dfa_run(dfa, w);
  if (!run.accepted) throw Error(ErrorKind::InvalidInput, "word is not accepted");
  const std::size_t first = w.size() - n;
  for (std::size_t j = w.size(); j > first; --j) {
    for (std::size_t i = j; i-- > first;) {
      if (run.trace[i] == run.trace[j]) {
        return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)),
                Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j)),
                Word(w.begin() + static_cast<std::ptrdiff_t>(j), w.end())};
      }
    }
  }
  throw Error(ErrorKind::InvalidInput, "no repeated state (impossible for a valid DFA)");
}

template <MarkedGroup G>
struct LanguageReport {
  long long radius = 0;
  bool sound = true;
  bool complete = true;
  std::optional<Word> counterexample;  // accepted word that is not geodesic
  std::optional<typename G::Element> missing;  // ball element with no accepted geodesic
  std::size_t accepted_words = 0;       // distinct (state, element) accepting pairs
};

/// Layered BFS over the product of the automaton with the Cayley graph.
/// Layer k holds the (state, element) pairs reachable by words of length k.
template <MarkedGroup G>
LanguageReport<G> verify_language(const Dfa& dfa, const G& g, const BallIndex<G>& b) {
  using E = typename G::Element;
  if (dfa.generators() != g.alphabet().size()) {
    throw Error(ErrorKind::InvalidInput, "DFA and group alphabets differ");
  }
  struct Node {
    int state;
    E element;
    std::size_t parent;  // index in the previous layer
    Letter letter;
  };
  struct PairHash {
    std::size_t operator()(const std::pair<int, E>& p) const noexcept {
      std::size_t s = std::hash<E>{}(p.second);
      hash_combine(s, static_cast<std::size_t>(p.first));
      return s;
    }
  };
  LanguageReport<G> rep;
  rep.radius = b.radius();
  std::vector<std::vector<Node>> layers{{Node{dfa.start(), g.identity(), 0, Letter{}}}};
  std::unordered_set<E> covered;
  auto word_of = [&](std::size_t layer, std::size_t idx) {
    Word w;
    for (std::size_t k = layer; k > 0; --k) {
      w.push_back(layers[k][idx].letter);
      idx = layers[k][idx].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  for (long long k = 0;; ++k) {
    auto& layer = layers[static_cast<std::size_t>(k)];
    for (std::size_t idx = 0; idx < layer.size(); ++idx) {
      const auto& node = layer[idx];
      if (!dfa.accepting(node.state)) continue;
      ++rep.accepted_words;
      auto d = b.find(node.element);
      if (!d || *d != k) {
        if (rep.sound) rep.counterexample = word_of(static_cast<std::size_t>(k), idx);
        rep.sound = false;
      } else {
        covered.insert(node.element);
      }
    }
    if (k == b.radius()) break;
    std::vector<Node> next;
    std::unordered_set<std::pair<int, E>, PairHash> seen;
    for (std::size_t idx = 0; idx < layer.size(); ++idx) {
      for (Letter l : g.alphabet().letters()) {
        auto t = dfa.next(layer[idx].state, l);
        if (!t) continue;
        E e = g.multiply(layer[idx].element, l);
        if (seen.emplace(*t, e).second) next.push_back({*t, std::move(e), idx, l});
      }
    }
    if (next.empty()) break;
    layers.push_back(std::move(next));
  }
  for (const auto& e : b.elements()) {
    if (!covered.count(e)) {
      rep.complete = false;
      rep.missing = e;
      break;
    }
  }
  return rep;
}

template <MarkedGroup G>
struct Extension {
  typename G::Element element;  // evaluate(abbc)
  Word word;                    // abbc
  long long distance_from_identity = 0;
  long long distance_from_start = 0;  // d(evaluate(w), evaluate(abbc))
};

/// Pumps an accepted w (|w| >= n) to a strictly longer geodesic within 2n of
/// evaluate(w), with both distances taken from the oracle.
template <MarkedGroup G>
Extension<G> extend_geodesic(const Dfa& dfa, const G& g, const Word& w, const BallIndex<G>& b,
                             const LanguageReport<G>& verified) {
  if (!verified.sound || verified.radius != b.radius()) {
    throw Error(ErrorKind::SoundnessUnverified, "DFA not verified sound on this ball");
  }
  const auto p = pump_decompose(dfa, w);
  Extension<G> ext;
  ext.word = p.pumped();
  ext.element = evaluate(g, ext.word);
  ext.distance_from_identity = distance(g, ext.element, b);
  const auto start = evaluate(g, w);
  const long long reach = 2 * static_cast<long long>(dfa.states());
  std::optional<long long> between;
  detail::sweep_visit(g, start, reach, kDefaultElementBudget, [&](const auto& e, long long d) {
    if (e == ext.element) {
      between = d;
      return false;
    }
    return true;
  });
  if (!between) throw Error(ErrorKind::BoundViolated, "pumped element is farther than 2n");
  ext.distance_from_start = *between;
  return ext;
}

struct RegboundReport {
  long long bound = 0;  // 2n
  long long max_depth = 0;
  std::size_t checked = 0;
  std::size_t violations = 0;  // depth > 2n
};

/// Exact depth of every element of the radius-r ball, compared with 2n.
/// Balls are grown one step at a time, so only as much room as the deepest
/// element needs is ever built.
template <MarkedGroup G>
RegboundReport regbound_check(const Dfa& dfa, const G& g, long long r) {
  RegboundReport rep;
  rep.bound = 2 * static_cast<long long>(dfa.states());
  auto inner = ball(g, r);
  std::vector<typename G::Element> open = inner.elements();
  rep.checked = open.size();
  for (long long extra = 1; extra <= rep.bound && !open.empty(); ++extra) {
    auto outer = ball(g, r + extra);
    std::vector<typename G::Element> still;
    for (const auto& e : open) {
      auto d = depth(g, e, outer, extra);
      if (d.exceeds_cap) still.push_back(e);
      else rep.max_depth = std::max(rep.max_depth, d.depth);
    }
    open = std::move(still);
  }
  rep.violations = open.size();
  if (!open.empty()) rep.max_depth = rep.bound + 1;
  return rep;
}

// ---------------------------------------------------------------------------
// Built-in automata
// ---------------------------------------------------------------------------

/// Freely reduced words in F_k: state 0 is the start, state 1 + code(l)
/// remembers the last letter l.
inline Dfa free_reduced_dfa(int k) {
  Dfa d(1 + 2 * k, 0, k);
  for (int s = 0; s < d.states(); ++s) d.set_accepting(s);
  for (int s = 0; s < d.states(); ++s) {
    for (int c = 0; c < 2 * k; ++c) {
      Letter l = Letter::from_code(c);
      if (s > 0 && Letter::from_code(s - 1) == l.inverse()) continue;
      d.set_transition(s, l, 1 + c);
    }
  }
  return d;
}

/// Words a_1^{e_1} a_2^{e_2} ... a_n^{e_n} for ℤⁿ with the standard
/// generators; state 1 + code(l) means the current block uses l.
inline Dfa zn_sorted_dfa(int n) {
  Dfa d(1 + 2 * n, 0, n);
  for (int s = 0; s < d.states(); ++s) d.set_accepting(s);
  for (int s = 0; s < d.states(); ++s) {
    const int cur = s == 0 ? -1 : Letter::from_code(s - 1).gen;
    for (int c = 0; c < 2 * n; ++c) {
      Letter l = Letter::from_code(c);
      if (l.gen > cur || (s > 0 && c == s - 1)) d.set_transition(s, l, 1 + c);
    }
  }
  return d;
}

struct DfaCatalogEntry {
  std::string name;
  Dfa dfa;
};

inline std::vector<DfaCatalogEntry> builtin_dfas() {
  return {{"free_reduced_2", free_reduced_dfa(2)}, {"zn_sorted_2", zn_sorted_dfa(2)}};
}

}  // namespace deadend
