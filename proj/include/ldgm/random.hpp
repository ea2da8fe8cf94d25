#pragma once

#include <cstdint>
#include <random>

namespace ldgm {

// splitmix64 finalizer; good avalanche for seed derivation.
inline std::uint64_t hash64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Stable 64-bit mix of (base_seed, repetition, stream index). Any single
/// run can be replayed in isolation from these three values.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = hash64(base + 0x9e3779b97f4a7c15ULL);
  h = hash64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = hash64(h ^ (b + 0xc2b2ae3d27d4eb4fULL));
  return h;
}

/// Seeded generator with portable output. The engine sequence is fixed by
/// the standard, and all real-valued draws below avoid std distributions,
/// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open01() { return 1.0 - uniform01(); }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Multiply-shift; bias is < 2^-64 per draw.
  int uniform_int(int n) {
    return static_cast<int>(
        (static_cast<unsigned __int128>(eng_()) * static_cast<unsigned __int128>(n)) >> 64);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ldgm
