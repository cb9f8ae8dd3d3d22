#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <queue>
#include <tuple>
#include <string>
#include <unordered_map>
#include <vector>

#include "deadend/core.hpp"
#include "deadend/error.hpp"
#include "deadend/laurent.hpp"

namespace deadend {

/// ℤ² ≀ ℤ: finitely supported ℤ²-valued lamps plus a cursor. Generators a, b
/// add the basis vectors to the lamp under the cursor; c moves the cursor +1.
struct WreathElement {
  struct Lamp {
    long long pos = 0, x = 0, y = 0;
    friend auto operator<=>(const Lamp&, const Lamp&) = default;
  };
  long long cursor = 0;
  std::vector<Lamp> lamps;  // sorted by position, nonzero only

  friend auto operator<=>(const WreathElement&, const WreathElement&) = default;
};

}  // namespace deadend

template <>
struct std::hash<deadend::WreathElement> {
  std::size_t operator()(const deadend::WreathElement& e) const noexcept {
    std::size_t seed = std::hash<long long>{}(e.cursor);
    for (const auto& l : e.lamps) {
      deadend::hash_combine(seed, std::hash<long long>{}(l.pos));
      deadend::hash_combine(seed, std::hash<long long>{}(l.x));
      deadend::hash_combine(seed, std::hash<long long>{}(l.y));
    }
    return seed;
  }
};

namespace deadend {

class WreathZ2Z {
 public:
  using Element = WreathElement;
  const GenAlphabet& alphabet() const { return alphabet_; }
  Element identity() const { return {}; }
  Element multiply(const Element& e, Letter l) const {
    Element r = e;
    if (l.gen == 2) {
      r.cursor += l.sign;
      return r;
    }
    auto it = std::lower_bound(r.lamps.begin(), r.lamps.end(), r.cursor,
                               [](const WreathElement::Lamp& a, long long p) { return a.pos < p; });
    if (it == r.lamps.end() || it->pos != r.cursor) it = r.lamps.insert(it, {r.cursor, 0, 0});
    (l.gen == 0 ? it->x : it->y) += l.sign;
    if (it->x == 0 && it->y == 0) r.lamps.erase(it);
    return r;
  }
  std::string render(const Element& e) const {
    std::string s = "{\"cursor\":" + std::to_string(e.cursor) + ",\"lamps\":[";
    for (std::size_t i = 0; i < e.lamps.size(); ++i) {
      const auto& l = e.lamps[i];
      if (i) s += ',';
      s += "[" + std::to_string(l.pos) + "," + std::to_string(l.x) + "," + std::to_string(l.y) + "]";
    }
    return s + "]}";
  }

 private:
  GenAlphabet alphabet_{std::vector<std::string>{"a", "b", "c"}};
};

/// The configuration with lamp (p1_d, p2_d) at position d and cursor z.
inline WreathElement wreath_configuration(const SupportVector& v, long long z) {
  WreathElement e;
  e.cursor = z;
  std::map<long long, std::array<long long, 2>> at;
  for (int g = 0; g < 2; ++g) {
    for (const auto& [d, c] : v[g].terms()) at[d][static_cast<std::size_t>(g)] = c;
  }
  for (const auto& [d, xy] : at) e.lamps.push_back({d, xy[0], xy[1]});
  return e;
}

/// Exact word length of a ℤ²≀ℤ configuration by A* search in the Cayley
/// graph. The heuristic (remaining lamp mismatch plus the distance to the
/// farthest place the cursor still has to reach) is admissible because every
/// letter changes one lamp coordinate by one or moves the cursor by one.
inline long long wreath_distance(const WreathElement& target, long long r_cap) {
  WreathZ2Z W;
  auto h = [&](const WreathElement& e) {
    long long mismatch = 0, far = std::llabs(e.cursor - target.cursor);
    std::size_t i = 0, j = 0;
    auto visit = [&](long long pos, long long dx, long long dy) {
      if (dx == 0 && dy == 0) return;
      mismatch += std::llabs(dx) + std::llabs(dy);
      far = std::max(far, std::llabs(e.cursor - pos));
    };
    while (i < e.lamps.size() || j < target.lamps.size()) {
      if (j == target.lamps.size() || (i < e.lamps.size() && e.lamps[i].pos < target.lamps[j].pos)) {
        visit(e.lamps[i].pos, e.lamps[i].x, e.lamps[i].y);
        ++i;
      } else if (i == e.lamps.size() || target.lamps[j].pos < e.lamps[i].pos) {
        visit(target.lamps[j].pos, target.lamps[j].x, target.lamps[j].y);
        ++j;
      } else {
        visit(e.lamps[i].pos, e.lamps[i].x - target.lamps[j].x, e.lamps[i].y - target.lamps[j].y);
        ++i, ++j;
      }
    }
    return mismatch + far;
  };
  using Item = std::tuple<long long, long long, WreathElement>;  // f, g, element
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> open;
  std::unordered_map<WreathElement, long long> best;
  const auto start = W.identity();
  best.emplace(start, 0);
  open.push({h(start), 0, start});
  const auto letters = W.alphabet().letters();
  while (!open.empty()) {
    auto [f, g, e] = open.top();
    open.pop();
    if (f > r_cap) break;
    if (best.at(e) < g) continue;
    if (e == target) return g;
    for (Letter l : letters) {
      auto n = W.multiply(e, l);
      auto [it, inserted] = best.emplace(n, g + 1);
      if (!inserted) {
        if (it->second <= g + 1) continue;
        it->second = g + 1;
      }
      open.push({g + 1 + h(n), g + 1, std::move(n)});
    }
  }
  throw Error(ErrorKind::CapExceeded, "wreath distance exceeds " + std::to_string(r_cap));
}

inline long long wreath_oracle(const SupportVector& v, long long z, long long r_cap) {
  return wreath_distance(wreath_configuration(v, z), r_cap);
}

}  // namespace deadend
