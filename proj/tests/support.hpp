#pragma once

#include <cstdint>
#include <random>

#include "deadend/core.hpp"

namespace testsupport {

/// Fixed-seed generator so property runs are reproducible.
inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed1234ULL + salt); }

inline long long uniform(std::mt19937_64& r, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(r);
}

inline deadend::Word random_word(std::mt19937_64& r, int generators, std::size_t max_len) {
  deadend::Word w(static_cast<std::size_t>(uniform(r, 0, static_cast<long long>(max_len))));
  for (auto& l : w) l = deadend::Letter::from_code(static_cast<int>(uniform(r, 0, 2 * generators - 1)));
  return w;
}

}  // namespace testsupport
