#pragma once

#include <cstdint>
#include <random>

namespace qracah {

// Seeded RNG with bit-reproducible output across platforms: raw mt19937_64
// words are pinned by the standard, and the conversions below avoid any
// library-specific distribution code.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::uint64_t word() { return eng(); }

  double uniform01() { return (eng() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1} by rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng();
    } while (x >= limit);
    return x % n;
  }

  // Uniform on {lo, ..., hi} inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

}  // namespace qracah
