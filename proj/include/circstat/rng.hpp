#pragma once

// Deterministic random number generation. All variates are produced from
// mt19937_64 raw output through explicit arithmetic (no std::*_distribution,
// whose sequences vary between standard library implementations), so a seed
// pins byte-identical results on every platform.

#include <cmath>
#include <cstdint>
#include <random>

#include "circstat/angle.hpp"

namespace circstat {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1); safe as a log() argument.
  double uniformOpen() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (explicit, portable).
  double normal() {
    if (haveSpare_) {
      haveSpare_ = false;
      return spare_;
    }
    const double u1 = uniformOpen();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = kTwoPi * u2;
    spare_ = r * std::sin(a);
    haveSpare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool haveSpare_ = false;
};

namespace detail {

/// splitmix64 finalizer; used to derive independent task streams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// A generator for sub-task `index` of a run keyed by `seed`; streams for
/// distinct indices are independent and order-insensitive.
inline Rng taskRng(std::uint64_t seed, std::uint64_t index) {
  return Rng(detail::mix64(detail::mix64(seed) ^ detail::mix64(~index)));
}

}  // namespace circstat
