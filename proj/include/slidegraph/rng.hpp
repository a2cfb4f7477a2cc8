#pragma once

#include <cstdint>

namespace slidegraph {

/// splitmix64 — tiny deterministic generator used wherever reproducibility
/// across platforms matters (parameter init, dropout masks, dataset splits).
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform in [0, n); n must be positive.
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }
};

}  // namespace slidegraph
