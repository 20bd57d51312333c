// Deterministic 64-bit generator (splitmix64). Used instead of the standard
// distributions so seeded runs reproduce bit-identically on any platform.
#pragma once

#include <cstdint>

namespace isotrack {

struct Rng {
  std::uint64_t state = 0x853c49e6748fea9bULL;

  explicit Rng(std::uint64_t seed = 1) : state(seed + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }
};

}  // namespace isotrack
