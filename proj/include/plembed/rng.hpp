#pragma once

#include <cstdint>

namespace plembed {

// Default seed for every sampling decision in the toolkit; the CLI lets the
// environment override it.
inline constexpr std::uint64_t kDefaultSeed = 88172645463325252ull;

// Deterministic uniform bits -> [0,1); kept independent of library
// distribution implementations so sampled results match across toolchains.
struct SplitRng {
  std::uint64_t state;
  explicit SplitRng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_bits() {
    // splitmix64
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next_bits() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return static_cast<int>(uniform() * n); }
};

}  // namespace plembed
