#pragma once

#include <cstdint>
#include <random>

namespace cchom {

// Deterministic sampling source: same seed => same draw sequence.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : eng(seed) {}

  std::uint64_t next() { return eng(); }

  // uniform in [lo, hi] inclusive
  long long uniform(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(eng);
  }
};

}  // namespace cchom
