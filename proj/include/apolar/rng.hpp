#pragma once

#include <cstdint>
#include <random>

#include "apolar/rational.hpp"

namespace apolar {

/// Seeded generator with a portable integer distribution, so the same seed gives
/// the same draws with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long>(eng_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = eng_(); while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  /// Uniform nonzero integer in [-bound, bound].
  long nonzero(long bound) {
    long v = uniform(-bound, bound - 1);
    return v >= 0 ? v + 1 : v;
  }

  /// Independent sub-seed for stream `index` (splitmix64 finalizer).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace apolar
