#pragma once

#include <cmath>
#include <vector>

#include "circstat/errors.hpp"

namespace circstat {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Map an arbitrary finite angle to its canonical representative in [-pi, pi).
inline double canonicalize(double x) {
  if (!std::isfinite(x)) {
    throw NumericError("canonicalize: non-finite angle");
  }
  double r = std::remainder(x, kTwoPi);  // lands in [-pi, pi]
  if (r >= kPi) r = -kPi;                // fold the closed upper end
  return r;
}

/// Shortest arc distance between two angles: pi - |pi - |a - b||, in [0, pi].
inline double arcDistance(double a, double b) {
  double d = std::fabs(a - b);
  d = std::fmod(d, kTwoPi);
  return kPi - std::fabs(kPi - d);
}

/// A sample of canonicalized angles. Thin wrapper so every consumer can rely
/// on the [-pi, pi) invariant having been applied exactly once.
class AngleSample {
 public:
  AngleSample() = default;
  explicit AngleSample(std::vector<double> raw) {
    angles_.reserve(raw.size());
    for (double x : raw) angles_.push_back(canonicalize(x));
  }

  std::size_t size() const noexcept { return angles_.size(); }
  bool empty() const noexcept { return angles_.empty(); }
  double operator[](std::size_t i) const { return angles_[i]; }
  const std::vector<double>& angles() const noexcept { return angles_; }

  auto begin() const { return angles_.begin(); }
  auto end() const { return angles_.end(); }

  /// Rotate every angle by c (result is canonicalized again).
  AngleSample rotated(double c) const {
    std::vector<double> out;
    out.reserve(angles_.size());
    for (double a : angles_) out.push_back(a + c);
    return AngleSample(std::move(out));
  }

  /// Reflect the sample through the zero direction.
  AngleSample reflected() const {
    std::vector<double> out;
    out.reserve(angles_.size());
    for (double a : angles_) out.push_back(-a);
    return AngleSample(std::move(out));
  }

 private:
  std::vector<double> angles_;
};

}  // namespace circstat
