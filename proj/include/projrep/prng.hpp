#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace projrep {

// Counter-based stream: the i-th draw (i = 1, 2, ...) of a stream with seed S
// is mix64(S + i * 0x9E3779B97F4A7C15) where mix64 is the SplitMix64
// finalizer. Uniform doubles take the top 53 bits. Normals use Box-Muller
// on two consecutive uniforms (the cosine branch only). Any implementation of
// those three rules reproduces every stream this library draws.
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Draw at absolute position `index` without touching the cursor.
  constexpr std::uint64_t at(std::uint64_t index) const {
    return mix64(seed_ + index * kGamma);
  }

  std::uint64_t next_u64() { return at(++counter_); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Uses rejection to avoid modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n == 0 ? 0 : (~std::uint64_t{0} - (~std::uint64_t{0} % n));
    for (;;) {
      const std::uint64_t v = next_u64();
      if (v < limit) return v % n;
    }
  }

  double normal() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace projrep
