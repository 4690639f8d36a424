#pragma once

// Circular geometry primitives and classical sample statistics: mean
// direction, resultant length, CSD, the Frechet median, and circular
// order-statistic quartiles.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "circstat/angle.hpp"
#include "circstat/errors.hpp"

namespace circstat {

struct MeanDirection {
  double mean = 0.0;           // canonical angle
  double resultantLength = 0.0;
};

/// Circular sample mean via arctan2 of the average unit vector.
inline MeanDirection circularMean(const AngleSample& s) {
  if (s.empty()) throw OutOfRangeError("circularMean: empty sample");
  double c = 0.0, sn = 0.0;
  for (double a : s) {
    c += std::cos(a);
    sn += std::sin(a);
  }
  c /= static_cast<double>(s.size());
  sn /= static_cast<double>(s.size());
  const double rho = std::hypot(c, sn);
  if (rho < 1e-12) {
    throw DegenerateResultant(
        "circularMean: resultant length below tolerance");
  }
  return {canonicalize(std::atan2(sn, c)), rho};
}

/// Sample mean resultant length (no degeneracy guard).
inline double resultantLength(const AngleSample& s) {
  if (s.empty()) throw OutOfRangeError("resultantLength: empty sample");
  double c = 0.0, sn = 0.0;
  for (double a : s) {
    c += std::cos(a);
    sn += std::sin(a);
  }
  return std::hypot(c, sn) / static_cast<double>(s.size());
}

/// Circular standard deviation sqrt(2 (1 - rho_hat)); defined for any sample.
inline double csd(const AngleSample& s) {
  return std::sqrt(2.0 * (1.0 - resultantLength(s)));
}

/// Midpoint-convention median of an already sorted vector.
inline double medianOfSorted(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) throw OutOfRangeError("medianOfSorted: empty list");
  return 0.5 * (v[(n - 1) / 2] + v[n / 2]);
}

namespace detail {

/// Precomputed structure for O(log n) evaluation of the mean arc distance
/// from a probe angle to every sample point.
class ArcDistanceSums {
 public:
  explicit ArcDistanceSums(const AngleSample& s) : n_(s.size()) {
    sorted_ = s.angles();
    std::sort(sorted_.begin(), sorted_.end());
    doubled_.reserve(2 * n_);
    for (double a : sorted_) doubled_.push_back(a);
    for (double a : sorted_) doubled_.push_back(a + kTwoPi);
    prefix_.assign(2 * n_ + 1, 0.0);
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      prefix_[i + 1] = prefix_[i] + doubled_[i];
    }
  }

  const std::vector<double>& sorted() const { return sorted_; }

  /// Mean over the sample of arcDistance(theta_i, m).
  double meanDistance(double m) const {
    double mm = m;
    if (mm < sorted_.front()) mm += kTwoPi;
    const auto first = std::lower_bound(doubled_.begin(), doubled_.end(), mm);
    const auto split =
        std::lower_bound(doubled_.begin(), doubled_.end(), mm + kPi);
    const std::size_t i0 = static_cast<std::size_t>(first - doubled_.begin());
    const std::size_t i1 = static_cast<std::size_t>(split - doubled_.begin());
    // Points on the counterclockwise half arc [m, m + pi).
    const double ccw =
        (prefix_[i1] - prefix_[i0]) - static_cast<double>(i1 - i0) * mm;
    // Remaining points, measured the other way around.
    const std::size_t i2 = i0 + n_;
    const double cw = static_cast<double>(i2 - i1) * (mm + kTwoPi) -
                      (prefix_[i2] - prefix_[i1]);
    return (ccw + cw) / static_cast<double>(n_);
  }

 private:
  std::size_t n_;
  std::vector<double> sorted_;
  std::vector<double> doubled_;
  std::vector<double> prefix_;
};

}  // namespace detail

/// Objective of the Frechet median problem at probe angle m.
inline double meanArcDistance(const AngleSample& s, double m) {
  return detail::ArcDistanceSums(s).meanDistance(canonicalize(m));
}

/// Frechet circular median. The objective is piecewise linear with
/// breakpoints only at sample points and their antipodes, so the exact
/// minimizing set is found from those 2n candidates. A contiguous tied arc
/// is resolved to its midpoint; disjoint minimizers raise NonUniqueMedian.
inline double frechetMedian(const AngleSample& s) {
  if (s.empty()) throw OutOfRangeError("frechetMedian: empty sample");
  const std::size_t n = s.size();
  if (n == 1) return s[0];

  const detail::ArcDistanceSums sums(s);
  std::vector<double> cand;
  cand.reserve(2 * n);
  for (double a : sums.sorted()) {
    cand.push_back(a);
    cand.push_back(canonicalize(a + kPi));
  }
  std::sort(cand.begin(), cand.end());

  std::vector<double> obj(cand.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cand.size(); ++i) {
    obj[i] = sums.meanDistance(cand[i]);
    best = std::min(best, obj[i]);
  }

  constexpr double kTieTol = 1e-10;
  std::vector<char> tied(cand.size());
  std::size_t tiedCount = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    tied[i] = obj[i] <= best + kTieTol;
    tiedCount += tied[i];
  }
  if (tiedCount == cand.size()) {
    throw NonUniqueMedian("frechetMedian: objective constant on the circle");
  }
  if (tiedCount == 1) {
    const auto it = std::find(tied.begin(), tied.end(), char(1));
    return cand[static_cast<std::size_t>(it - tied.begin())];
  }
  // The tied candidates must form one contiguous circular run.
  std::size_t transitions = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const std::size_t prev = (i + cand.size() - 1) % cand.size();
    if (tied[i] != tied[prev]) ++transitions;
  }
  if (transitions != 2) {
    throw NonUniqueMedian("frechetMedian: disjoint minimizing arcs");
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const std::size_t prev = (i + cand.size() - 1) % cand.size();
    if (tied[i] && !tied[prev]) {
      start = i;
      break;
    }
  }
  std::size_t end = start;
  while (tied[(end + 1) % cand.size()]) end = (end + 1) % cand.size();
  double span = cand[end] - cand[start];
  if (span < 0.0) span += kTwoPi;
  return canonicalize(cand[start] + 0.5 * span);
}

/// Circular quartiles: walk ceil(n/4) sample points clockwise and
/// counterclockwise from the median. Returned values live on the linear
/// interval (median - pi, median + pi] so qLow <= median <= qHigh.
inline std::pair<double, double> circularQuartiles(const AngleSample& s,
                                                   double median) {
  if (s.empty()) throw OutOfRangeError("circularQuartiles: empty sample");
  const std::size_t n = s.size();
  if (n == 1) return {s[0], s[0]};
  std::vector<double> neg, pos;
  for (double a : s) {
    const double d = canonicalize(a - median);
    if (d < 0.0) {
      neg.push_back(-d);
    } else if (d > 0.0) {
      pos.push_back(d);
    }
  }
  std::sort(neg.begin(), neg.end());
  std::sort(pos.begin(), pos.end());
  const std::size_t k = (n + 3) / 4;  // ceil(n / 4)
  double lowOff = 0.0, highOff = 0.0;
  if (!neg.empty()) lowOff = neg[std::min(k, neg.size()) - 1];
  if (!pos.empty()) highOff = pos[std::min(k, pos.size()) - 1];
  return {median - lowOff, median + highOff};
}

}  // namespace circstat
