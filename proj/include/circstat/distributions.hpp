#pragma once

// The von Mises and wrapped normal families: density, CDF, quantile,
// sampling, moment links, the population values of the robust dispersion
// functionals, and the eta map connecting them to the CSD.

#include <cmath>
#include <string>

#include "circstat/angle.hpp"
#include "circstat/errors.hpp"
#include "circstat/rng.hpp"
#include "circstat/special.hpp"

namespace circstat {

enum class ModelKind { VonMises, WrappedNormal };

enum class DispersionKind { Cmad, Clms, Clts, Csd };

inline std::string to_string(ModelKind k) {
  return k == ModelKind::VonMises ? "vonMises" : "wrappedNormal";
}

inline std::string to_string(DispersionKind k) {
  switch (k) {
    case DispersionKind::Cmad: return "cmad";
    case DispersionKind::Clms: return "clms";
    case DispersionKind::Clts: return "clts";
    case DispersionKind::Csd: return "csd";
  }
  return "?";
}

/// Largest attainable population value of each dispersion kind (reached in
/// the uniform limit).
inline double dispersionSup(DispersionKind kind) {
  switch (kind) {
    case DispersionKind::Cmad:
    case DispersionKind::Clms:
      return kPi / 2.0;
    case DispersionKind::Clts:
      return std::sqrt(2.0 * (1.0 - 2.0 / kPi));
    case DispersionKind::Csd:
      return std::sqrt(2.0);
  }
  return 0.0;
}

struct CircularModel {
  ModelKind kind = ModelKind::VonMises;
  double mu = 0.0;      // location, canonical angle
  double param = 1.0;   // kappa (>= 0) for vM, sigma (> 0) for WN

  static CircularModel vonMises(double mu, double kappa) {
    if (kappa < 0.0) throw OutOfRangeError("vonMises: kappa must be >= 0");
    return {ModelKind::VonMises, canonicalize(mu), kappa};
  }
  static CircularModel wrappedNormal(double mu, double sigma) {
    if (sigma <= 0.0) {
      throw OutOfRangeError("wrappedNormal: sigma must be > 0");
    }
    return {ModelKind::WrappedNormal, canonicalize(mu), sigma};
  }
  CircularModel centered() const { return {kind, 0.0, param}; }
};

namespace detail {

inline double stdNormalCdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

inline double wnDensity(double delta, double sigma) {
  // delta is the canonical offset from the location.
  if (sigma > 2.5) {
    // Fourier form converges fast for flat densities.
    double s = 1.0;
    for (int m = 1; m < 60; ++m) {
      const double w = std::exp(-0.5 * m * m * sigma * sigma);
      if (w < 1e-16) break;
      s += 2.0 * w * std::cos(m * delta);
    }
    return s / kTwoPi;
  }
  const int wraps =
      std::max(3, static_cast<int>(std::ceil(5.0 * sigma / kTwoPi)) + 2);
  double s = 0.0;
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  for (int m = -wraps; m <= wraps; ++m) {
    const double u = delta + kTwoPi * m;
    s += std::exp(-u * u * inv2s2);
  }
  return s / (sigma * std::sqrt(kTwoPi));
}

inline double wnCdf(double theta, double mu, double sigma) {
  // P(-pi <= Theta <= theta) as a sum of linear-normal CDF increments.
  const int wraps =
      std::max(4, static_cast<int>(std::ceil(5.0 * sigma / kTwoPi)) + 3);
  double s = 0.0;
  for (int m = -wraps; m <= wraps; ++m) {
    const double shift = kTwoPi * m - mu;
    s += stdNormalCdf((theta + shift) / sigma) -
         stdNormalCdf((-kPi + shift) / sigma);
  }
  return s;
}

}  // namespace detail

/// Density of the model at theta (periodic in theta).
inline double density(const CircularModel& m, double theta) {
  const double delta = canonicalize(theta - m.mu);
  if (m.kind == ModelKind::VonMises) {
    if (m.param == 0.0) return 1.0 / kTwoPi;
    // Scaled form exp(kappa (cos d - 1)) / (2 pi exp(-kappa) I0(kappa))
    // never overflows.
    return std::exp(m.param * (std::cos(delta) - 1.0)) /
           (kTwoPi * besselIScaled(0, m.param));
  }
  return detail::wnDensity(delta, m.param);
}

/// CDF anchored at F(-pi) = 0.
inline double cdf(const CircularModel& m, double theta) {
  theta = canonicalize(theta);
  if (m.kind == ModelKind::WrappedNormal) {
    return detail::wnCdf(theta, m.mu, m.param);
  }
  if (m.param == 0.0) return (theta + kPi) / kTwoPi;
  // No closed form for the von Mises CDF: adaptive quadrature of the density,
  // split at the mode so the (possibly very narrow) peak always lands on an
  // interval endpoint and cannot slip between quadrature samples.
  QuadratureSpec spec;
  spec.absTol = 1e-12;
  spec.relTol = 1e-12;
  const auto f = [&m](double t) { return density(m, t); };
  const double mode = canonicalize(m.mu);
  double v;
  if (theta <= mode) {
    v = integrate(f, -kPi, theta, spec);
  } else {
    v = integrate(f, -kPi, mode, spec) + integrate(f, mode, theta, spec);
  }
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return v;
}

/// Quantile: safeguarded Newton on the CDF (the derivative is the density),
/// falling back to bisection whenever a step leaves the current bracket.
inline double quantile(const CircularModel& m, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw OutOfRangeError("quantile: p must lie in (0, 1)");
  }
  double lo = -kPi;
  double hi = kPi;
  double x = m.mu;  // symmetric models: start at the center
  for (int iter = 0; iter < 200; ++iter) {
    const double F = cdf(m, x) - p;
    if (F > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (std::fabs(F) < 1e-14 || hi - lo < 1e-13) break;
    const double f = density(m, x);
    double next = (f > 1e-300) ? x - F / f : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) < 1e-15) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

/// Population mean resultant length rho.
inline double meanResultant(const CircularModel& m) {
  if (m.kind == ModelKind::VonMises) return besselRatioA(m.param);
  return std::exp(-0.5 * m.param * m.param);
}

/// Population circular standard deviation sqrt(2 (1 - rho)).
inline double populationCsd(const CircularModel& m) {
  return std::sqrt(2.0 * (1.0 - meanResultant(m)));
}

/// Draw n points from an existing generator stream.
inline AngleSample sample(const CircularModel& m, std::size_t n, Rng& rng) {
  std::vector<double> out;
  out.reserve(n);
  if (m.kind == ModelKind::WrappedNormal) {
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(m.mu + m.param * rng.normal());
    }
    return AngleSample(std::move(out));
  }
  const double kappa = m.param;
  if (kappa < 1e-10) {  // indistinguishable from uniform
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(-kPi + kTwoPi * rng.uniform());
    }
    return AngleSample(std::move(out));
  }
  // Best-Fisher wrapped Cauchy envelope rejection sampler.
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  for (std::size_t i = 0; i < n; ++i) {
    double f;
    for (;;) {
      const double u1 = rng.uniformOpen();
      const double z = std::cos(kPi * u1);
      f = (1.0 + r * z) / (r + z);
      const double c = kappa * (r - f);
      const double u2 = rng.uniformOpen();
      if (c * (2.0 - c) - u2 > 0.0) break;
      if (std::log(c / u2) + 1.0 - c >= 0.0) break;
    }
    const double u3 = rng.uniform();
    const double theta = (u3 < 0.5 ? -1.0 : 1.0) * std::acos(f);
    out.push_back(m.mu + theta);
  }
  return AngleSample(std::move(out));
}

/// Draw n points; deterministic for a given seed.
inline AngleSample sample(const CircularModel& m, std::size_t n,
                          std::uint64_t seed) {
  Rng rng(seed);
  return sample(m, n, rng);
}

struct PopulationDispersion {
  double csd = 0.0;
  double cmad = 0.0;
  double clms = 0.0;
  double clts = 0.0;
  double meanResultant = 0.0;
};

/// Population values of CSD/CMAD/CLMS/CLTS for a (positive-parameter) model.
/// CMAD and CLMS coincide with the upper quartile of the centered model, and
/// CLTS is the CSD of the model restricted to the interquartile arc.
inline PopulationDispersion populationDispersion(const CircularModel& model) {
  if (model.param <= 0.0) {
    throw OutOfRangeError("populationDispersion: parameter must be > 0");
  }
  const CircularModel c = model.centered();
  PopulationDispersion out;
  out.meanResultant = meanResultant(c);
  out.csd = std::sqrt(2.0 * (1.0 - out.meanResultant));
  const double q3 = quantile(c, 0.75);
  out.cmad = q3;
  out.clms = q3;
  QuadratureSpec spec;
  spec.absTol = 1e-12;
  spec.relTol = 1e-12;
  const double trimmed = integrate(
      [&c](double t) { return 2.0 * (1.0 - std::cos(t)) * density(c, t); },
      0.0, q3, spec);
  out.clts = std::sqrt(4.0 * trimmed);
  return out;
}

/// Population dispersion of the requested kind for a centered model with the
/// given parameter.
inline double dispersionValue(ModelKind family, DispersionKind kind,
                              double param) {
  const CircularModel m{family, 0.0, param};
  if (kind == DispersionKind::Csd) return populationCsd(m);
  const PopulationDispersion d = populationDispersion(m);
  switch (kind) {
    case DispersionKind::Cmad: return d.cmad;
    case DispersionKind::Clms: return d.clms;
    case DispersionKind::Clts: return d.clts;
    default: return d.csd;
  }
}

/// kappa as a function of the CSD within the von Mises family.
inline double vonMisesKappaFromCsd(double csd) {
  const double rho = 1.0 - 0.5 * csd * csd;
  if (rho <= 0.0) return 0.0;
  if (rho >= 1.0) {
    throw ExplosionError("kappa diverges: CSD at the point-mass limit");
  }
  return besselRatioAInverse(rho);
}

/// sigma as a function of the CSD within the wrapped normal family.
inline double wrappedNormalSigmaFromCsd(double csd) {
  const double rho = 1.0 - 0.5 * csd * csd;
  if (rho <= 0.0) {
    throw ExplosionError("sigma diverges: CSD at the uniform limit");
  }
  return std::sqrt(-2.0 * std::log(rho));
}

/// Consistency map CSD -> model parameter.
inline double parameterFromCsd(ModelKind family, double csd) {
  return family == ModelKind::VonMises ? vonMisesKappaFromCsd(csd)
                                       : wrappedNormalSigmaFromCsd(csd);
}

/// Invert the eta map: given a population dispersion value s of `kind`,
/// return the CSD of the family member whose dispersion equals s.
inline double etaInverse(ModelKind family, DispersionKind kind, double s) {
  const double sup = dispersionSup(kind);
  if (s <= 0.0) throw OutOfRangeError("etaInverse: dispersion must be > 0");
  if (s >= sup) {
    throw ExplosionError("etaInverse: dispersion at or above its supremum");
  }
  if (kind == DispersionKind::Csd) return s;

  if (family == ModelKind::VonMises) {
    // Dispersion decreases in kappa.
    const double kLo = 1e-8;
    if (dispersionValue(family, kind, kLo) <= s) {
      return populationCsd({family, 0.0, kLo});  // essentially uniform
    }
    double kHi = 1.0;
    while (dispersionValue(family, kind, kHi) > s) {
      kHi *= 2.0;
      if (kHi > 1e8) {
        throw NumericError("etaInverse: failed to bracket kappa");
      }
    }
    RootSpec spec;
    spec.bracketLow = kLo;
    spec.bracketHigh = kHi;
    spec.tol = 1e-11;
    const double kappa = findRoot(
        [&](double k) { return dispersionValue(family, kind, k) - s; }, spec);
    return populationCsd({family, 0.0, kappa});
  }

  // Wrapped normal: dispersion increases in sigma.
  const double sLo = 1e-6;
  if (dispersionValue(family, kind, sLo) >= s) {
    return populationCsd({family, 0.0, sLo});
  }
  double sHi = 0.5;
  while (dispersionValue(family, kind, sHi) < s) {
    sHi *= 2.0;
    if (sHi > 64.0) {
      throw ExplosionError("etaInverse: dispersion at its supremum (WN)");
    }
  }
  RootSpec spec;
  spec.bracketLow = sLo;
  spec.bracketHigh = sHi;
  spec.tol = 1e-11;
  const double sigma = findRoot(
      [&](double sg) { return dispersionValue(family, kind, sg) - s; }, spec);
  return populationCsd({family, 0.0, sigma});
}

}  // namespace circstat
