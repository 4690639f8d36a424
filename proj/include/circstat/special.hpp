#pragma once

// Self-contained numerical kernel: modified Bessel functions of orders 0-2,
// the ratio A(k) = I1(k)/I0(k) and its inverse, adaptive Simpson quadrature,
// a Brent-style bracketing root finder, and central finite differences.

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "circstat/angle.hpp"
#include "circstat/errors.hpp"

namespace circstat {

struct QuadratureSpec {
  double absTol = 1e-10;
  double relTol = 1e-10;
  int maxDepth = 50;
};

struct RootSpec {
  double bracketLow = 0.0;
  double bracketHigh = 1.0;
  double tol = 1e-12;
  int maxIter = 200;
};

namespace detail {

inline double simpsonStep(const std::function<double(double)>& f, double a,
                          double fa, double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptiveSimpsonRec(const std::function<double(double)>& f,
                                 double a, double fa, double b, double fb,
                                 double m, double fm, double whole, double tol,
                                 int depth, int maxDepth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpsonStep(f, a, fa, m, fm, lm, flm);
  const double right = simpsonStep(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth >= maxDepth) {
    throw NumericError("integrate: adaptive Simpson depth exceeded");
  }
  return adaptiveSimpsonRec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                            depth + 1, maxDepth) +
         adaptiveSimpsonRec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                            depth + 1, maxDepth);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f on [a, b].
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, const QuadratureSpec& spec = {}) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, spec);
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = detail::simpsonStep(f, a, fa, b, fb, m, fm);
  const double tol =
      std::max(spec.absTol, spec.relTol * std::fabs(whole));
  return detail::adaptiveSimpsonRec(f, a, fa, b, fb, m, fm, whole, tol, 0,
                                    spec.maxDepth);
}

/// Brent's method on a sign-changing bracket.
inline double findRoot(const std::function<double(double)>& f,
                       const RootSpec& spec) {
  double a = spec.bracketLow;
  double b = spec.bracketHigh;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) {
    throw NumericError("findRoot: no sign change over bracket");
  }
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < spec.maxIter; ++iter) {
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 =
        2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) +
        0.5 * spec.tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      // Inverse quadratic interpolation / secant step.
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q),
                             std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  throw NumericError("findRoot: max iterations exceeded");
}

namespace detail {

/// Power series for I_n(x), reliable for moderate arguments (x <= 15).
inline double besselSeries(int order, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  for (int j = 1; j <= order; ++j) term *= 0.5 * x / j;
  double sum = term;
  for (int k = 1; k < 300; ++k) {
    term *= q / (static_cast<double>(k) * (k + order));
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

/// exp(-x) * I_n(x) through the integral representation
/// (1/pi) \int_0^pi exp(x (cos t - 1)) cos(n t) dt, stable for large x.
inline double besselScaledQuad(int order, double x) {
  QuadratureSpec spec;
  spec.absTol = 1e-14;
  spec.relTol = 1e-13;
  const auto f = [order, x](double t) {
    return std::exp(x * (std::cos(t) - 1.0)) * std::cos(order * t);
  };
  // For large x the integrand is a spike of width ~1/sqrt(x) at t = 0;
  // splitting there keeps the adaptive refinement shallow.
  const double cut = std::min(kPi, 10.0 / std::sqrt(x));
  return (integrate(f, 0.0, cut, spec) + integrate(f, cut, kPi, spec)) / kPi;
}

}  // namespace detail

/// exp(-x) * I_order(x) for order in {0, 1, 2}; valid for any x >= 0.
inline double besselIScaled(int order, double x) {
  if (order < 0 || order > 2) {
    throw OutOfRangeError("besselIScaled: order must be 0, 1 or 2");
  }
  if (x < 0.0) throw OutOfRangeError("besselIScaled: negative argument");
  if (x <= 15.0) return detail::besselSeries(order, x) * std::exp(-x);
  return detail::besselScaledQuad(order, x);
}

/// Modified Bessel function of the first kind, order 0, 1 or 2.
inline double besselI(int order, double x) {
  if (order < 0 || order > 2) {
    throw OutOfRangeError("besselI: order must be 0, 1 or 2");
  }
  if (x < 0.0) throw OutOfRangeError("besselI: negative argument");
  if (x > 700.0) {
    throw NumericError("besselI: argument overflows double range");
  }
  if (x <= 15.0) return detail::besselSeries(order, x);
  return detail::besselScaledQuad(order, x) * std::exp(x);
}

/// A(k) = I1(k)/I0(k), evaluated with scaled forms so large k never overflows.
inline double besselRatioA(double kappa) {
  if (kappa < 0.0) throw OutOfRangeError("besselRatioA: negative kappa");
  if (kappa == 0.0) return 0.0;
  return besselIScaled(1, kappa) / besselIScaled(0, kappa);
}

/// Inverse of A on [0, 1).
inline double besselRatioAInverse(double r) {
  if (r < 0.0 || r >= 1.0) {
    throw OutOfRangeError("besselRatioAInverse: argument outside [0, 1)");
  }
  if (r == 0.0) return 0.0;
  RootSpec spec;
  spec.bracketLow = 0.0;
  spec.bracketHigh = std::max(50.0, 10.0 / (1.0 - r));
  spec.tol = 1e-13;
  return findRoot([r](double k) { return besselRatioA(k) - r; }, spec);
}

/// Error function (the standard library already meets the accuracy bar).
inline double erf(double x) { return std::erf(x); }

/// Symmetric central difference with a relative step.
inline double centralDiff(const std::function<double(double)>& f, double x,
                          double h = 0.0) {
  if (h <= 0.0) h = std::max(1e-6, 1e-6 * std::fabs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace circstat
