#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "circstat/special.hpp"

using namespace circstat;

namespace {

// Independent long double power series for I_n(x); different accumulation
// order and precision than the library implementation.
long double besselOracle(int order, long double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L;
  for (int j = 1; j <= order; ++j) term *= 0.5L * x / j;
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * (k + order));
    sum += term;
    if (term < sum * 1e-22L) break;
  }
  return sum;
}

// Continued fraction for A(k) = I1(k)/I0(k) from the Bessel recurrence
// I_{v+1}(k)/I_v(k) = 1 / (2v/k + I_{v+2}/I_{v+1}), evaluated bottom-up
// with a truncation order that grows with k.
double besselRatioOracle(double k) {
  const int top = 40 + static_cast<int>(std::ceil(1.5 * k));
  double v = 0.0;
  for (int j = top; j >= 1; --j) {
    v = 1.0 / (2.0 * j / k + v);
  }
  return v;
}

}  // namespace

TEST_CASE("bessel functions match an independent series for moderate x") {
  const std::vector<double> xs = {0.1, 0.5, 1.0, 2.0, 5.0,
                                  8.0, 12.0, 14.9};
  for (double x : xs) {
    for (int order = 0; order <= 2; ++order) {
      const double want =
          static_cast<double>(besselOracle(order, static_cast<long double>(x)));
      CHECK(besselI(order, x) == doctest::Approx(want).epsilon(1e-13));
    }
  }
  CHECK(besselI(0, 0.0) == 1.0);
  CHECK(besselI(1, 0.0) == 0.0);
  CHECK(besselI(2, 0.0) == 0.0);
}

TEST_CASE("scaled bessel agrees across the series/quadrature switch") {
  // The implementation switches representations at x = 15; both branches
  // must agree to near machine precision around the seam.
  for (int order = 0; order <= 2; ++order) {
    const double below = besselIScaled(order, 15.0 - 1e-9);
    const double above = besselIScaled(order, 15.0 + 1e-9);
    CHECK(below == doctest::Approx(above).epsilon(1e-10));
  }
}

TEST_CASE("three-term recurrence I2 = I0 - (2/x) I1 holds everywhere") {
  for (double x : {0.5, 3.0, 10.0, 15.0, 20.0, 80.0, 300.0, 650.0}) {
    const double i0 = besselIScaled(0, x);
    const double i1 = besselIScaled(1, x);
    const double i2 = besselIScaled(2, x);
    CHECK(i2 == doctest::Approx(i0 - 2.0 / x * i1).epsilon(1e-11));
  }
}

TEST_CASE("bessel argument guards") {
  CHECK_THROWS_AS(besselI(3, 1.0), OutOfRangeError);
  CHECK_THROWS_AS(besselI(0, -1.0), OutOfRangeError);
  CHECK_THROWS_AS(besselI(0, 701.0), NumericError);
  CHECK(besselIScaled(0, 705.0) > 0.0);  // scaled form has no overflow limit
}

TEST_CASE("A(k) matches the continued-fraction oracle and is monotone") {
  double prev = 0.0;
  for (double k : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0}) {
    const double a = besselRatioA(k);
    CHECK(a == doctest::Approx(besselRatioOracle(k)).epsilon(1e-12));
    CHECK(a > prev);
    CHECK(a < 1.0);
    prev = a;
  }
  CHECK(besselRatioA(0.0) == 0.0);
}

TEST_CASE("A inverse is a true inverse") {
  for (double r : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999}) {
    const double k = besselRatioAInverse(r);
    CHECK(besselRatioA(k) == doctest::Approx(r).epsilon(1e-10));
  }
  CHECK(besselRatioAInverse(0.0) == 0.0);
  CHECK_THROWS_AS(besselRatioAInverse(1.0), OutOfRangeError);
  CHECK_THROWS_AS(besselRatioAInverse(-0.1), OutOfRangeError);
}

TEST_CASE("erf matches reference values") {
  // Abramowitz & Stegun table values.
  CHECK(circstat::erf(0.5) == doctest::Approx(0.5204998778).epsilon(1e-9));
  CHECK(circstat::erf(1.0) == doctest::Approx(0.8427007929).epsilon(1e-9));
  CHECK(circstat::erf(2.0) == doctest::Approx(0.9953222650).epsilon(1e-9));
  CHECK(circstat::erf(-1.0) == doctest::Approx(-0.8427007929).epsilon(1e-9));
}

TEST_CASE("quadrature reproduces closed forms") {
  CHECK(integrate([](double t) { return std::sin(t); }, 0.0, kPi) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate([](double t) { return t * t; }, -1.0, 2.0) ==
        doctest::Approx(3.0).epsilon(1e-12));
  // Sharply peaked integrand exercises the adaptive splitting.
  const double peaked = integrate(
      [](double t) { return std::exp(-200.0 * t * t); }, -1.0, 1.0);
  CHECK(peaked == doctest::Approx(std::sqrt(kPi / 200.0)).epsilon(1e-10));
}

TEST_CASE("quadrature is additive and antisymmetric") {
  const auto f = [](double t) { return std::cos(3.0 * t) + t; };
  const double whole = integrate(f, -2.0, 2.5);
  const double split = integrate(f, -2.0, 0.7) + integrate(f, 0.7, 2.5);
  CHECK(whole == doctest::Approx(split).epsilon(1e-11));
  CHECK(integrate(f, 2.5, -2.0) == doctest::Approx(-whole).epsilon(1e-11));
  CHECK(integrate(f, 1.0, 1.0) == 0.0);
}

TEST_CASE("root finder solves transcendental equations") {
  RootSpec spec;
  spec.bracketLow = 0.0;
  spec.bracketHigh = 3.0;
  const double root =
      findRoot([](double x) { return std::cos(x); }, spec);
  CHECK(root == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      findRoot([](double x) { return x * x + 1.0; }, spec), NumericError);
}

TEST_CASE("central difference differentiates smooth functions") {
  CHECK(centralDiff([](double x) { return std::sin(x); }, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(centralDiff([](double x) { return x * x * x; }, 2.0) ==
        doctest::Approx(12.0).epsilon(1e-7));
}
