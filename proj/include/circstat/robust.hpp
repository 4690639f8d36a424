#pragma once

// Finite-sample robust dispersion estimators (CMAD, CLMS, CLTS) with exact
// circular sliding-window algorithms, and the consistency-mapped parameter
// estimators plus the classical baselines.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "circstat/angle.hpp"
#include "circstat/core.hpp"
#include "circstat/distributions.hpp"
#include "circstat/errors.hpp"

namespace circstat {

/// Subsample size used by CLMS/CLTS: ceil(n/2) + 1, clamped to n.
inline std::size_t halfSampleSize(std::size_t n) {
  return std::min(n, (n + 1) / 2 + 1);
}

struct ArcWindow {
  double start = 0.0;  // first sorted point of the winning window
  double end = 0.0;    // last point, reached counterclockwise from start
};

struct WindowStatistic {
  double value = 0.0;
  ArcWindow window;
};

/// Sample CMAD: midpoint-convention median of the arc distances to the
/// Frechet median. Throws NonUniqueMedian when the median is not unique.
inline double cmadSample(const AngleSample& s) {
  const double med = frechetMedian(s);
  std::vector<double> d;
  d.reserve(s.size());
  for (double a : s) d.push_back(arcDistance(a, med));
  std::sort(d.begin(), d.end());
  return medianOfSorted(d);
}

/// Sample CLMS: half the length of the shortest arc covering h consecutive
/// sorted points. Exact minimization over all n circular windows; ties go to
/// the smallest start index.
inline WindowStatistic clmsSample(const AngleSample& s) {
  const std::size_t n = s.size();
  if (n < 2) throw OutOfRangeError("clmsSample: need at least 2 points");
  std::vector<double> b = s.angles();
  std::sort(b.begin(), b.end());
  const std::size_t h = halfSampleSize(n);
  WindowStatistic best;
  best.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + h - 1) % n;
    double len = b[j] - b[i];
    if (len < 0.0) len += kTwoPi;
    if (len < best.value) {
      best.value = len;
      best.window = {b[i], b[j]};
    }
  }
  best.value *= 0.5;
  return best;
}

/// Sample CLTS: smallest CSD over all n circular windows of h consecutive
/// sorted points, with O(1) rolling updates of the window resultant.
inline WindowStatistic cltsSample(const AngleSample& s) {
  const std::size_t n = s.size();
  if (n < 2) throw OutOfRangeError("cltsSample: need at least 2 points");
  std::vector<double> b = s.angles();
  std::sort(b.begin(), b.end());
  const std::size_t h = halfSampleSize(n);
  std::vector<double> cs(2 * n), sn(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    cs[i] = std::cos(b[i % n]);
    sn[i] = std::sin(b[i % n]);
  }
  double sumC = 0.0, sumS = 0.0;
  for (std::size_t i = 0; i < h; ++i) {
    sumC += cs[i];
    sumS += sn[i];
  }
  WindowStatistic best;
  best.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = std::hypot(sumC, sumS) / static_cast<double>(h);
    const double value = std::sqrt(std::max(0.0, 2.0 * (1.0 - rho)));
    if (value < best.value) {
      best.value = value;
      best.window = {b[i], b[(i + h - 1) % n]};
    }
    sumC += cs[i + h] - cs[i];
    sumS += sn[i + h] - sn[i];
  }
  return best;
}

/// Raw sample dispersion of the requested kind.
inline double sampleDispersion(const AngleSample& s, DispersionKind kind) {
  switch (kind) {
    case DispersionKind::Cmad: return cmadSample(s);
    case DispersionKind::Clms: return clmsSample(s).value;
    case DispersionKind::Clts: return cltsSample(s).value;
    case DispersionKind::Csd: return csd(s);
  }
  throw OutOfRangeError("sampleDispersion: unknown kind");
}

struct EstimateReport {
  DispersionKind kind = DispersionKind::Clms;
  ModelKind model = ModelKind::VonMises;
  double rawDispersion = 0.0;
  std::optional<double> mappedCsd;
  std::optional<double> parameter;
  std::size_t halfSampleSize = 0;
  std::optional<ArcWindow> window;
  // Breakdown states are reported explicitly rather than thrown, so
  // downstream code can see them (detection falls back to "no cutoff").
  bool exploded = false;  // dispersion at/above its supremum -> kappa = 0
  bool imploded = false;  // dispersion zero -> kappa = +inf
};

/// Full estimation chain S_n -> CSD_n = eta^{-1}(S_n) -> parameter.
inline EstimateReport estimateParameter(const AngleSample& s,
                                        DispersionKind kind,
                                        ModelKind model) {
  if (s.size() < 2) {
    throw OutOfRangeError("estimateParameter: need at least 2 points");
  }
  EstimateReport rep;
  rep.kind = kind;
  rep.model = model;
  rep.halfSampleSize = halfSampleSize(s.size());
  switch (kind) {
    case DispersionKind::Cmad:
      rep.rawDispersion = cmadSample(s);
      break;
    case DispersionKind::Clms: {
      const WindowStatistic w = clmsSample(s);
      rep.rawDispersion = w.value;
      rep.window = w.window;
      break;
    }
    case DispersionKind::Clts: {
      const WindowStatistic w = cltsSample(s);
      rep.rawDispersion = w.value;
      rep.window = w.window;
      break;
    }
    case DispersionKind::Csd:
      rep.rawDispersion = csd(s);
      break;
  }
  if (rep.rawDispersion <= 0.0) {
    rep.imploded = true;
    rep.mappedCsd = 0.0;
    rep.parameter = model == ModelKind::VonMises
                        ? std::numeric_limits<double>::infinity()
                        : 0.0;
    return rep;
  }
  if (rep.rawDispersion >= dispersionSup(kind)) {
    rep.exploded = true;
    rep.mappedCsd = std::sqrt(2.0);
    rep.parameter = model == ModelKind::VonMises
                        ? 0.0
                        : std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.mappedCsd = etaInverse(model, kind, rep.rawDispersion);
  rep.parameter = parameterFromCsd(model, *rep.mappedCsd);
  return rep;
}

/// Classical von Mises concentration estimate kappa = A^{-1}(rho_hat).
inline double mleVonMisesKappa(const AngleSample& s) {
  if (s.size() < 2) {
    throw OutOfRangeError("mleVonMisesKappa: need at least 2 points");
  }
  const double rho = resultantLength(s);
  if (rho >= 1.0) {
    throw ExplosionError("mleVonMisesKappa: all points identical");
  }
  return besselRatioAInverse(rho);
}

/// Classical wrapped normal scale estimate sigma = sqrt(-2 log rho_hat).
inline double classicalWnSigma(const AngleSample& s) {
  if (s.size() < 2) {
    throw OutOfRangeError("classicalWnSigma: need at least 2 points");
  }
  const double rho = resultantLength(s);
  if (rho < 1e-12) {
    throw DegenerateResultant("classicalWnSigma: resultant length is zero");
  }
  return std::sqrt(-2.0 * std::log(std::min(rho, 1.0)));
}

}  // namespace circstat
