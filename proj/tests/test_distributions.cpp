#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "circstat/distributions.hpp"

using namespace circstat;

namespace {

const std::vector<CircularModel> kModels = {
    CircularModel::vonMises(0.0, 0.5),
    CircularModel::vonMises(1.2, 2.0),
    CircularModel::vonMises(-2.5, 8.0),
    CircularModel::vonMises(0.3, 150.0),
    CircularModel::wrappedNormal(0.0, 0.3),
    CircularModel::wrappedNormal(-1.0, 1.0),
    CircularModel::wrappedNormal(2.0, 2.8),
};

// Naive wrapped normal density: plain wrap sum with a generous number of
// terms, independent of the library's branch selection.
double wnDensityOracle(double theta, double mu, double sigma) {
  double s = 0.0;
  for (int m = -200; m <= 200; ++m) {
    const double u = theta - mu + kTwoPi * m;
    s += std::exp(-0.5 * u * u / (sigma * sigma));
  }
  return s / (sigma * std::sqrt(kTwoPi));
}

}  // namespace

TEST_CASE("densities are positive, periodic and integrate to one") {
  for (const auto& m : kModels) {
    QuadratureSpec spec;
    spec.absTol = 1e-11;
    spec.relTol = 1e-11;
    const double total =
        integrate([&m](double t) { return density(m, t); }, -kPi, kPi, spec);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    for (double t : {-3.0, -0.5, 0.0, 1.0, 2.9}) {
      CHECK(density(m, t) > 0.0);
      CHECK(density(m, t + kTwoPi) == doctest::Approx(density(m, t)));
      // Symmetry about the location.
      CHECK(density(m, m.mu + (t - m.mu)) ==
            doctest::Approx(density(m, m.mu - (t - m.mu))).epsilon(1e-10));
    }
  }
}

TEST_CASE("densities are unimodal with the mode at mu") {
  for (const auto& m : kModels) {
    double prev = density(m, m.mu);
    for (int g = 1; g <= 100; ++g) {
      const double cur = density(m, m.mu + kPi * g / 100.0);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("wrapped normal density matches a naive wrap sum") {
  for (double sigma : {0.2, 0.8, 1.5, 2.4, 3.5, 5.0}) {
    const CircularModel m = CircularModel::wrappedNormal(0.7, sigma);
    for (double t : {-3.1, -1.0, 0.0, 0.7, 1.9, 3.0}) {
      CHECK(density(m, t) ==
            doctest::Approx(wnDensityOracle(t, 0.7, sigma)).epsilon(1e-10));
    }
  }
}

TEST_CASE("cdf is a proper distribution function") {
  for (const auto& m : kModels) {
    CHECK(cdf(m, -kPi) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(cdf(m, kPi - 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
    double prev = 0.0;
    for (int g = 1; g <= 40; ++g) {
      const double t = -kPi + kTwoPi * g / 40.0 - 1e-12;
      const double F = cdf(m, t);
      CHECK(F >= prev - 1e-12);
      CHECK(F >= -1e-12);
      CHECK(F <= 1.0 + 1e-12);
      prev = F;
    }
  }
}

TEST_CASE("wrapped normal cdf matches quadrature of the density") {
  for (double sigma : {0.4, 1.1, 2.0}) {
    const CircularModel m = CircularModel::wrappedNormal(-0.6, sigma);
    for (double t : {-2.0, -0.6, 0.5, 2.8}) {
      const double byQuad =
          integrate([&m](double u) { return density(m, u); }, -kPi, t);
      CHECK(cdf(m, t) == doctest::Approx(byQuad).epsilon(1e-9));
    }
  }
}

TEST_CASE("quantile inverts the cdf") {
  for (const auto& m : kModels) {
    for (double p : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
      const double q = quantile(m, p);
      CHECK(cdf(m, q) == doctest::Approx(p).epsilon(1e-8));
    }
    // The cdf is anchored at the -pi cut, so F(mu) = 0.5 holds exactly only
    // when no appreciable mass sits between the antipode of mu and the cut:
    // either mu = 0 (cut is the antipode) or the model is concentrated
    // enough that the antipodal density is negligible.
    if (m.mu == 0.0 || kPi * density(m, -kPi) < 1e-12) {
      CHECK(quantile(m, 0.5) == doctest::Approx(m.mu).epsilon(1e-7));
    }
  }
  CHECK_THROWS_AS(quantile(kModels[0], 0.0), OutOfRangeError);
  CHECK_THROWS_AS(quantile(kModels[0], 1.0), OutOfRangeError);
}

TEST_CASE("mean resultant length: known values and sampling consistency") {
  CHECK(meanResultant(CircularModel::vonMises(0.0, 5.0)) ==
        doctest::Approx(besselRatioA(5.0)).epsilon(1e-14));
  CHECK(meanResultant(CircularModel::wrappedNormal(0.0, 1.0)) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  for (const auto& m : kModels) {
    const AngleSample big = sample(m, 200000, std::uint64_t{9001});
    double c = 0.0, s = 0.0;
    for (double a : big) {
      c += std::cos(a - m.mu);
      s += std::sin(a - m.mu);
    }
    c /= static_cast<double>(big.size());
    s /= static_cast<double>(big.size());
    CHECK(c == doctest::Approx(meanResultant(m)).epsilon(0.01));
    CHECK(std::fabs(s) < 0.01);
  }
}

TEST_CASE("sampler matches the cdf (Kolmogorov-Smirnov style bound)") {
  for (const auto& m : kModels) {
    const std::size_t n = 100000;
    AngleSample draws = sample(m, n, std::uint64_t{271828});
    std::vector<double> v = draws.angles();
    std::sort(v.begin(), v.end());
    double dMax = 0.0;
    for (std::size_t i = 0; i < n; i += 997) {
      const double F = cdf(m, v[i]);
      const double emp = static_cast<double>(i + 1) / n;
      dMax = std::max(dMax, std::fabs(F - emp));
    }
    // 1.63 / sqrt(n) is the 1% KS critical value; allow some slack.
    CHECK(dMax < 2.5 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("von Mises kappa=0 degenerates to the uniform distribution") {
  const CircularModel u = CircularModel::vonMises(0.0, 0.0);
  CHECK(density(u, 1.0) == doctest::Approx(1.0 / kTwoPi));
  CHECK(cdf(u, 0.0) == doctest::Approx(0.5));
  CHECK(meanResultant(u) == doctest::Approx(0.0));
}

TEST_CASE("population dispersion identities") {
  for (const auto& m : kModels) {
    const PopulationDispersion d = populationDispersion(m);
    const CircularModel c = m.centered();
    // Upper-quartile characterization shared by the two quantile-type kinds.
    CHECK(d.cmad == d.clms);
    CHECK(cdf(c, d.clms) == doctest::Approx(0.75).epsilon(1e-8));
    // Trimmed dispersion sits strictly below the full dispersion, above 0.
    CHECK(d.clts > 0.0);
    CHECK(d.clts < d.csd);
    CHECK(d.csd == doctest::Approx(populationCsd(m)).epsilon(1e-12));
    // All three robust kinds stay below their uniform-limit suprema.
    CHECK(d.cmad < dispersionSup(DispersionKind::Cmad));
    CHECK(d.clts < dispersionSup(DispersionKind::Clts));
  }
}

TEST_CASE("high concentration limit matches the normal approximation") {
  // For large kappa the von Mises is close to N(0, 1/kappa), so the upper
  // quartile scales like 0.6745 / sqrt(kappa).
  const PopulationDispersion d =
      populationDispersion(CircularModel::vonMises(0.0, 100.0));
  CHECK(d.clms * std::sqrt(100.0) == doctest::Approx(0.6745).epsilon(2e-3));
  CHECK(d.csd * std::sqrt(100.0) == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("dispersion suprema are approached in the uniform limit") {
  CHECK(dispersionSup(DispersionKind::Cmad) == doctest::Approx(kPi / 2.0));
  CHECK(dispersionSup(DispersionKind::Clms) == doctest::Approx(kPi / 2.0));
  CHECK(dispersionSup(DispersionKind::Clts) ==
        doctest::Approx(std::sqrt(2.0 * (1.0 - 2.0 / kPi))));
  CHECK(dispersionSup(DispersionKind::Csd) == doctest::Approx(std::sqrt(2.0)));
  const PopulationDispersion flat =
      populationDispersion(CircularModel::vonMises(0.0, 1e-6));
  CHECK(flat.clms == doctest::Approx(kPi / 2.0).epsilon(1e-4));
  CHECK(flat.clts ==
        doctest::Approx(dispersionSup(DispersionKind::Clts)).epsilon(1e-4));
}

TEST_CASE("population dispersion is monotone in the parameter") {
  for (DispersionKind kind : {DispersionKind::Cmad, DispersionKind::Clms,
                              DispersionKind::Clts, DispersionKind::Csd}) {
    double prev = 1e9;
    for (double kappa : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double v = dispersionValue(ModelKind::VonMises, kind, kappa);
      CHECK(v < prev);  // decreasing in concentration
      prev = v;
    }
    prev = 0.0;
    for (double sigma : {0.2, 0.4, 0.8, 1.4, 2.2}) {
      const double v = dispersionValue(ModelKind::WrappedNormal, kind, sigma);
      CHECK(v > prev);  // increasing in scale
      prev = v;
    }
  }
}

TEST_CASE("etaInverse round-trips through the population dispersion") {
  for (ModelKind family : {ModelKind::VonMises, ModelKind::WrappedNormal}) {
    for (DispersionKind kind :
         {DispersionKind::Cmad, DispersionKind::Clms, DispersionKind::Clts}) {
      for (double param : {0.5, 1.0, 3.0, 10.0}) {
        const double psi = family == ModelKind::VonMises ? param : param / 4.0;
        const double s = dispersionValue(family, kind, psi);
        const double mapped = etaInverse(family, kind, s);
        CHECK(mapped ==
              doctest::Approx(populationCsd({family, 0.0, psi}))
                  .epsilon(1e-7));
        // And the recovered parameter matches.
        CHECK(parameterFromCsd(family, mapped) ==
              doctest::Approx(psi).epsilon(1e-6));
      }
    }
  }
  CHECK(etaInverse(ModelKind::VonMises, DispersionKind::Csd, 0.7) == 0.7);
}

TEST_CASE("etaInverse boundary behavior") {
  CHECK_THROWS_AS(etaInverse(ModelKind::VonMises, DispersionKind::Clms, 0.0),
                  OutOfRangeError);
  CHECK_THROWS_AS(
      etaInverse(ModelKind::VonMises, DispersionKind::Clms, kPi / 2.0),
      ExplosionError);
  CHECK_THROWS_AS(
      etaInverse(ModelKind::WrappedNormal, DispersionKind::Clts,
                 dispersionSup(DispersionKind::Clts)),
      ExplosionError);
}

TEST_CASE("csd-to-parameter maps have the right closed forms") {
  const double csdVal = populationCsd(CircularModel::wrappedNormal(0.0, 0.8));
  CHECK(wrappedNormalSigmaFromCsd(csdVal) == doctest::Approx(0.8).epsilon(1e-10));
  const double csdVm = populationCsd(CircularModel::vonMises(0.0, 3.0));
  CHECK(vonMisesKappaFromCsd(csdVm) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK_THROWS_AS(vonMisesKappaFromCsd(0.0), ExplosionError);
  CHECK_THROWS_AS(wrappedNormalSigmaFromCsd(std::sqrt(2.0)), ExplosionError);
}

TEST_CASE("model factories validate their parameters") {
  CHECK_THROWS_AS(CircularModel::vonMises(0.0, -1.0), OutOfRangeError);
  CHECK_THROWS_AS(CircularModel::wrappedNormal(0.0, 0.0), OutOfRangeError);
  const CircularModel m = CircularModel::vonMises(7.0, 2.0);
  CHECK(m.mu == doctest::Approx(canonicalize(7.0)));
}
