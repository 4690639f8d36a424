#pragma once

// Analytical robustness machinery: influence functions, asymptotic variances,
// Fisher information, asymptotic relative efficiency, breakdown bounds, and
// the Monte Carlo harnesses for relative-bias curves and the contamination
// study. Also ships the adversarial sample constructions used by the
// breakdown stress tests.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "circstat/angle.hpp"
#include "circstat/distributions.hpp"
#include "circstat/errors.hpp"
#include "circstat/rng.hpp"
#include "circstat/robust.hpp"
#include "circstat/special.hpp"

namespace circstat {

namespace detail {

inline void requireCenteredPositive(const CircularModel& m,
                                    const char* where) {
  if (m.param <= 0.0) {
    throw OutOfRangeError(std::string(where) + ": parameter must be > 0");
  }
}

}  // namespace detail

/// Influence function shared by CMAD and CLMS at a centered model:
/// a two-valued step, sign(|y| - q3) / (4 f(q3)).
inline double ifCmadClms(const CircularModel& model, double y) {
  detail::requireCenteredPositive(model, "ifCmadClms");
  const CircularModel c = model.centered();
  const double q3 = quantile(c, 0.75);
  const double fq3 = density(c, q3);
  const double ay = std::fabs(canonicalize(y));
  const double sgn = (ay > q3) - (ay < q3);
  return sgn / (4.0 * fq3);
}

/// Influence function of CLTS at a centered model; the central branch has
/// the shape of -cos(y), the outer branch is constant.
inline double ifClts(const CircularModel& model, double y) {
  detail::requireCenteredPositive(model, "ifClts");
  const CircularModel c = model.centered();
  const PopulationDispersion d = populationDispersion(c);
  const double S = d.clts;
  const double q3 = d.clms;
  const double ay = std::fabs(canonicalize(y));
  double v = 1.0 - 0.5 * S * S - std::cos(q3);
  if (ay < q3) v += 2.0 * (std::cos(q3) - std::cos(ay));
  return v / S;
}

/// Influence function of the CSD.
inline double ifCsd(const CircularModel& model, double y) {
  detail::requireCenteredPositive(model, "ifCsd");
  const double S = populationCsd(model);
  return (1.0 - 0.5 * S * S - std::cos(canonicalize(y))) / S;
}

/// Raw influence function of the selected dispersion kind.
inline double influence(const CircularModel& model, DispersionKind kind,
                        double y) {
  switch (kind) {
    case DispersionKind::Cmad:
    case DispersionKind::Clms:
      return ifCmadClms(model, y);
    case DispersionKind::Clts:
      return ifClts(model, y);
    case DispersionKind::Csd:
      return ifCsd(model, y);
  }
  throw OutOfRangeError("influence: unknown kind");
}

/// Derivative of the population dispersion with respect to the model
/// parameter, by central differences.
inline double dispersionSlope(const CircularModel& model,
                              DispersionKind kind) {
  detail::requireCenteredPositive(model, "dispersionSlope");
  const double psi = model.param;
  const double h = 1e-4 * psi;
  const ModelKind family = model.kind;
  return (dispersionValue(family, kind, psi + h) -
          dispersionValue(family, kind, psi - h)) /
         (2.0 * h);
}

/// Influence function of the consistency-mapped parameter estimator
/// psi_hat = zeta(S_n): chain rule zeta'(S) * IF(y; S, F), with
/// zeta'(S) = 1 / (dS/dpsi).
inline double transformedIf(const CircularModel& model, DispersionKind kind,
                            double y) {
  const double slope = dispersionSlope(model, kind);
  return influence(model, kind, y) / slope;
}

/// Asymptotic variance of the raw dispersion estimator S_n at the model.
inline double asymptoticVariance(const CircularModel& model,
                                 DispersionKind kind) {
  detail::requireCenteredPositive(model, "asymptoticVariance");
  const CircularModel c = model.centered();
  switch (kind) {
    case DispersionKind::Cmad:
    case DispersionKind::Clms: {
      const double q3 = quantile(c, 0.75);
      const double fq3 = density(c, q3);
      return 1.0 / (16.0 * fq3 * fq3);
    }
    case DispersionKind::Clts: {
      const PopulationDispersion d = populationDispersion(c);
      const double S = d.clts;
      const double q3 = d.clms;
      const double a = 1.0 - 0.5 * S * S - std::cos(q3);
      QuadratureSpec spec;
      spec.absTol = 1e-12;
      spec.relTol = 1e-12;
      const double i1 = integrate(
          [&](double t) {
            return (std::cos(q3) - std::cos(t)) * density(c, t);
          },
          -q3, q3, spec);
      const double i2 = integrate(
          [&](double t) {
            const double u = std::cos(q3) - std::cos(t);
            return u * u * density(c, t);
          },
          -q3, q3, spec);
      return (a * a + 4.0 * a * i1 + 4.0 * i2) / (S * S);
    }
    case DispersionKind::Csd: {
      // E[IF^2] = (E cos^2 - rho^2) / CSD^2, with E cos^2 from the second
      // cosine moment of the family.
      const double rho = meanResultant(c);
      const double rho2 =
          c.kind == ModelKind::VonMises
              ? besselIScaled(2, c.param) / besselIScaled(0, c.param)
              : std::exp(-2.0 * c.param * c.param);
      const double csd2 = 2.0 * (1.0 - rho);
      return (0.5 * (1.0 + rho2) - rho * rho) / csd2;
    }
  }
  throw OutOfRangeError("asymptoticVariance: unknown kind");
}

/// Fisher information for the dispersion parameter: Bessel closed form for
/// the von Mises concentration, numerical quadrature for the wrapped normal
/// scale.
inline double fisherInformation(const CircularModel& model) {
  detail::requireCenteredPositive(model, "fisherInformation");
  if (model.kind == ModelKind::VonMises) {
    const double k = model.param;
    const double r1 = besselIScaled(1, k) / besselIScaled(0, k);
    const double r2 = besselIScaled(2, k) / besselIScaled(0, k);
    return 0.5 * (1.0 + r2) - r1 * r1;
  }
  const double sigma = model.param;
  const double h = 1e-5 * (1.0 + sigma);
  const CircularModel lo = CircularModel::wrappedNormal(0.0, sigma - h);
  const CircularModel hi = CircularModel::wrappedNormal(0.0, sigma + h);
  const CircularModel c = model.centered();
  QuadratureSpec spec;
  spec.absTol = 1e-11;
  spec.relTol = 1e-10;
  return integrate(
      [&](double t) {
        const double dlog =
            (std::log(density(hi, t)) - std::log(density(lo, t))) / (2.0 * h);
        return dlog * dlog * density(c, t);
      },
      -kPi, kPi, spec);
}

/// Asymptotic relative efficiency of the kind-based parameter estimator
/// with respect to the maximum likelihood estimator.
inline double are(const CircularModel& model, DispersionKind kind) {
  const double info = fisherInformation(model);
  const double slope = dispersionSlope(model, kind);
  const double avarPsi =
      asymptoticVariance(model, kind) / (slope * slope);
  return (1.0 / info) / avarPsi;
}

/// Upper bound on the explosion breakdown value of the CMAD:
/// 1 - 0.5 / P_F(mu - pi/2 < Theta < mu + pi/2).
inline double cmadBreakdownBound(const CircularModel& model) {
  detail::requireCenteredPositive(model, "cmadBreakdownBound");
  const CircularModel c = model.centered();
  const double mass = cdf(c, kPi / 2.0) - cdf(c, -kPi / 2.0);
  return 1.0 - 0.5 / mass;
}

// ---------------------------------------------------------------------------
// Monte Carlo harnesses
// ---------------------------------------------------------------------------

enum class ContaminationType { PointMass, MeanShift };

inline std::string to_string(ContaminationType t) {
  return t == ContaminationType::PointMass ? "pointMass" : "meanShift";
}

struct BiasCurvePoint {
  double theta = 0.0;
  double relBias = 0.0;
};

struct BiasCurve {
  DispersionKind kind = DispersionKind::Csd;
  double epsilon = 0.0;
  ContaminationType type = ContaminationType::PointMass;
  std::size_t sampleSize = 0;
  std::uint64_t seed = 0;
  std::vector<BiasCurvePoint> points;
};

/// Relative-bias curve rb(theta) = (S(contaminated) - S(clean)) / S(clean),
/// estimated by Monte Carlo with common random numbers across the grid.
inline BiasCurve biasCurve(const CircularModel& model, DispersionKind kind,
                           double epsilon, ContaminationType type,
                           std::size_t gridSize = 181,
                           std::size_t sampleSize = 5000,
                           std::uint64_t seed = 42) {
  detail::requireCenteredPositive(model, "biasCurve");
  if (epsilon < 0.0 || epsilon >= 0.5) {
    throw OutOfRangeError("biasCurve: epsilon must lie in [0, 0.5)");
  }
  const CircularModel c = model.centered();
  const std::size_t n = sampleSize;
  const std::size_t nBad =
      static_cast<std::size_t>(std::llround(epsilon * n));
  Rng cleanRng = taskRng(seed, 0);
  const AngleSample clean = sample(c, n, cleanRng);
  // Contaminant displacements are drawn once and recentered at each grid
  // theta, so curves are smooth in theta.
  Rng contRng = taskRng(seed, 1);
  const AngleSample displacement = sample(c, nBad, contRng);
  const double cleanValue = sampleDispersion(clean, kind);

  BiasCurve out;
  out.kind = kind;
  out.epsilon = epsilon;
  out.type = type;
  out.sampleSize = n;
  out.seed = seed;
  out.points.reserve(gridSize);
  for (std::size_t g = 0; g < gridSize; ++g) {
    const double theta =
        -kPi + kTwoPi * static_cast<double>(g) / static_cast<double>(gridSize);
    std::vector<double> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n - nBad; ++i) pts.push_back(clean[i]);
    for (std::size_t i = 0; i < nBad; ++i) {
      pts.push_back(type == ContaminationType::PointMass
                        ? theta
                        : theta + displacement[i]);
    }
    const double v = sampleDispersion(AngleSample(std::move(pts)), kind);
    out.points.push_back({theta, (v - cleanValue) / cleanValue});
  }
  return out;
}

struct FiveNumberSummary {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

/// Linear-interpolation quantiles of a sorted vector.
inline FiveNumberSummary fiveNumber(std::vector<double> v) {
  if (v.empty()) throw OutOfRangeError("fiveNumber: empty list");
  std::sort(v.begin(), v.end());
  const auto q = [&v](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    const double w = pos - static_cast<double>(i);
    return v[i] * (1.0 - w) + v[i + 1] * w;
  };
  return {v.front(), q(0.25), q(0.5), q(0.75), v.back()};
}

struct StudyRow {
  double param = 0.0;
  double epsilon = 0.0;
  std::string estimator;
  FiveNumberSummary summary;
  std::size_t failures = 0;
};

/// Contamination study: for each (parameter, epsilon) cell, n points are
/// generated, round(epsilon n) of them replaced by contaminants located at
/// the antipode, and all four estimators applied; repeated `reps` times with
/// independent per-task generator streams.
inline std::vector<StudyRow> contaminationStudy(
    ModelKind family, const std::vector<double>& params,
    const std::vector<double>& epsilons, std::size_t n = 200,
    std::size_t reps = 500,
    ContaminationType type = ContaminationType::MeanShift,
    std::uint64_t seed = 42) {
  std::vector<StudyRow> rows;
  const char* classicalName =
      family == ModelKind::VonMises ? "mle" : "classical";
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    const double psi = params[pi];
    const CircularModel clean{family, 0.0, psi};
    const CircularModel shifted{family, canonicalize(kPi), psi};
    for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
      const double eps = epsilons[ei];
      const std::size_t nBad =
          static_cast<std::size_t>(std::llround(eps * n));
      std::vector<double> vClassical, vCmad, vClms, vClts;
      std::size_t fClassical = 0, fCmad = 0, fClms = 0, fClts = 0;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const std::uint64_t task =
            (pi * epsilons.size() + ei) * reps + rep;
        Rng rng = taskRng(seed, task);
        AngleSample base = sample(clean, n, rng);
        std::vector<double> pts(base.begin(), base.end());
        if (nBad > 0) {
          if (type == ContaminationType::MeanShift) {
            const AngleSample bad = sample(shifted, nBad, rng);
            for (std::size_t i = 0; i < nBad; ++i) {
              pts[n - nBad + i] = bad[i];
            }
          } else {
            for (std::size_t i = 0; i < nBad; ++i) {
              pts[n - nBad + i] = canonicalize(kPi);
            }
          }
        }
        const AngleSample x(std::move(pts));
        try {
          vClassical.push_back(family == ModelKind::VonMises
                                   ? mleVonMisesKappa(x)
                                   : classicalWnSigma(x));
        } catch (const Error&) {
          ++fClassical;
        }
        const auto push = [family, &x](DispersionKind kind,
                                       std::vector<double>& dst,
                                       std::size_t& failures) {
          try {
            const EstimateReport r = estimateParameter(x, kind, family);
            if (r.exploded || r.imploded) {
              ++failures;
            } else {
              dst.push_back(*r.parameter);
            }
          } catch (const Error&) {
            ++failures;
          }
        };
        push(DispersionKind::Cmad, vCmad, fCmad);
        push(DispersionKind::Clms, vClms, fClms);
        push(DispersionKind::Clts, vClts, fClts);
      }
      rows.push_back({psi, eps, classicalName, fiveNumber(vClassical),
                      fClassical});
      rows.push_back({psi, eps, "cmad", fiveNumber(vCmad), fCmad});
      rows.push_back({psi, eps, "clms", fiveNumber(vClms), fClms});
      rows.push_back({psi, eps, "clts", fiveNumber(vClts), fClts});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Breakdown stress constructions
// ---------------------------------------------------------------------------

/// Two equal atoms a quarter turn either side of mu; the worst-case
/// contaminating distribution for CMAD explosion.
inline AngleSample hStarSample(double mu, std::size_t n) {
  std::vector<double> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(i < n / 2 ? mu - kPi / 2.0 : mu + kPi / 2.0);
  }
  return AngleSample(std::move(pts));
}

/// Three-atom family: weight lambda at 0 and (1 - lambda)/2 at each of
/// +/- c pi.
inline AngleSample threeAtomSample(double lambda, double c, std::size_t n) {
  if (lambda < 0.0 || lambda > 1.0 || c <= 0.0 || c > 1.0) {
    throw OutOfRangeError("threeAtomSample: invalid weights");
  }
  std::vector<double> pts;
  pts.reserve(n);
  const std::size_t nCenter =
      static_cast<std::size_t>(std::llround(lambda * n));
  const std::size_t nSide = (n - nCenter) / 2;
  for (std::size_t i = 0; i < nCenter; ++i) pts.push_back(0.0);
  for (std::size_t i = 0; i < nSide; ++i) pts.push_back(-c * kPi);
  while (pts.size() < n) pts.push_back(c * kPi);
  return AngleSample(std::move(pts));
}

}  // namespace circstat
