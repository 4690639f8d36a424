#pragma once

// Circular violin plot: a von Mises kernel density estimate mounted on the
// unit circle, mirrored radially, clipped at the detection cutoff, with an
// embedded circular boxplot (IQR arc + white median tick) and flagged points
// drawn outside the ring. Rendered to deterministic SVG text.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "circstat/angle.hpp"
#include "circstat/core.hpp"
#include "circstat/detection.hpp"
#include "circstat/distributions.hpp"
#include "circstat/errors.hpp"
#include "circstat/special.hpp"

namespace circstat {

struct KdeSpec {
  double kernelConcentration = 0.0;  // nu; <= 0 means "pick automatically"
  std::size_t gridSize = 512;
};

/// von Mises kernel density estimate on an equally spaced grid over
/// [-pi, pi).
inline std::vector<double> vonMisesKde(const AngleSample& s,
                                       const KdeSpec& spec) {
  if (s.size() < 2) throw OutOfRangeError("vonMisesKde: need >= 2 points");
  if (spec.gridSize < 64) {
    throw OutOfRangeError("vonMisesKde: grid too coarse");
  }
  const double nu = spec.kernelConcentration;
  if (nu <= 0.0) throw OutOfRangeError("vonMisesKde: nu must be > 0");
  const double norm =
      1.0 / (kTwoPi * besselIScaled(0, nu) * static_cast<double>(s.size()));
  std::vector<double> grid(spec.gridSize);
  for (std::size_t j = 0; j < spec.gridSize; ++j) {
    const double theta = -kPi + kTwoPi * static_cast<double>(j) /
                                    static_cast<double>(spec.gridSize);
    double acc = 0.0;
    for (double a : s) {
      acc += std::exp(nu * (std::cos(theta - a) - 1.0));
    }
    grid[j] = acc * norm;
  }
  return grid;
}

/// Pointwise KDE evaluation (same kernel as the grid version).
inline double kdeAt(const AngleSample& s, double nu, double theta) {
  double acc = 0.0;
  for (double a : s) acc += std::exp(nu * (std::cos(theta - a) - 1.0));
  return acc / (kTwoPi * besselIScaled(0, nu) * static_cast<double>(s.size()));
}

/// Taylor-type plug-in smoothing parameter driven by a (robust)
/// concentration estimate.
inline double defaultBandwidth(const AngleSample& s, double kappaHat) {
  if (s.size() < 2) throw OutOfRangeError("defaultBandwidth: need >= 2");
  if (kappaHat <= 0.0) return 1.0;  // degenerate fit: flat fallback
  const double n = static_cast<double>(s.size());
  // All Bessel factors in exponentially scaled form; the e^{2k} factors of
  // I2(2k) and I0(k)^2 cancel exactly.
  const double ratio =
      besselIScaled(2, 2.0 * kappaHat) /
      (besselIScaled(0, kappaHat) * besselIScaled(0, kappaHat));
  const double v =
      3.0 * n * kappaHat * kappaHat * ratio / (4.0 * std::sqrt(kPi));
  return std::pow(v, 0.4);
}

struct ViolinGeometry {
  double ringBase = 1.0;
  double densityScale = 0.35;
  std::size_t gridSize = 0;
  std::vector<double> gridAngles;
  std::vector<double> density;
  std::vector<double> thickness;  // full radial thickness at each angle
  double clipValue = 0.0;         // density height where the ring is cut
  double maxDensity = 0.0;
  double qLow = 0.0;    // linear representation around the median
  double qHigh = 0.0;
  double median = 0.0;
  double cutoff = 0.0;
  std::vector<double> flaggedAngles;
};

/// Assemble the violin geometry from the sample and its detection report.
inline ViolinGeometry buildViolin(const AngleSample& s,
                                  const DetectionReport& report,
                                  const KdeSpec& specIn) {
  KdeSpec spec = specIn;
  if (spec.kernelConcentration <= 0.0) {
    spec.kernelConcentration = defaultBandwidth(
        s, report.model == ModelKind::VonMises ? report.parameter : 1.0);
  }
  ViolinGeometry g;
  g.gridSize = spec.gridSize;
  g.median = report.median;
  g.cutoff = report.cutoff;
  g.density = vonMisesKde(s, spec);
  g.gridAngles.resize(spec.gridSize);
  for (std::size_t j = 0; j < spec.gridSize; ++j) {
    g.gridAngles[j] = -kPi + kTwoPi * static_cast<double>(j) /
                                 static_cast<double>(spec.gridSize);
  }
  g.maxDensity = 0.0;
  for (double d : g.density) g.maxDensity = std::max(g.maxDensity, d);
  if (report.degenerate) {
    g.clipValue = std::numeric_limits<double>::infinity();
  } else {
    // Clip where the flagging region begins: the KDE height at the cutoff
    // angles on either side of the median (the larger of the two, so the
    // ring is never cut before the boundary is reached).
    const double nu = spec.kernelConcentration;
    g.clipValue = std::max(kdeAt(s, nu, report.median + report.cutoff),
                           kdeAt(s, nu, report.median - report.cutoff));
  }
  g.thickness.resize(spec.gridSize);
  for (std::size_t j = 0; j < spec.gridSize; ++j) {
    g.thickness[j] = g.densityScale *
                     std::min(g.density[j], g.clipValue) / g.maxDensity;
  }
  const auto [lo, hi] = circularQuartiles(s, report.median);
  g.qLow = lo;
  g.qHigh = hi;
  for (const DetectionPoint& p : report.points) {
    if (p.flagged) g.flaggedAngles.push_back(p.angle);
  }
  return g;
}

struct SvgStyle {
  int canvasPx = 640;
  double ringRadiusPx = 190.0;
  std::string violinFill = "#9ecbe4";
  std::string violinStroke = "#2c6e91";
  std::string boxColor = "#1f3b57";
  std::string medianColor = "#ffffff";
  std::string flagColor = "#c62828";
  double boxWidthPx = 16.0;
  double flagMarkerPx = 5.0;
};

namespace detail {

inline void appendf(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  out += buf;
}

}  // namespace detail

/// Render the geometry as a standalone SVG 1.1 document. Output is
/// byte-deterministic for fixed geometry and style: all coordinates are
/// printed with three fixed decimals.
inline std::string renderSvg(const ViolinGeometry& g,
                             const SvgStyle& style = {}) {
  const double cx = style.canvasPx / 2.0;
  const double cy = style.canvasPx / 2.0;
  const double R = style.ringRadiusPx;
  const auto px = [&](double angle, double radius) {
    // Zero angle points East; angles grow counterclockwise (SVG y is down).
    return std::pair<double, double>(cx + radius * R * std::cos(angle),
                                     cy - radius * R * std::sin(angle));
  };
  std::string out;
  out.reserve(1 << 16);
  detail::appendf(out,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  style.canvasPx, style.canvasPx, style.canvasPx,
                  style.canvasPx);
  detail::appendf(out,
                  "<rect width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n",
                  style.canvasPx, style.canvasPx);

  // Mirrored ring: outer boundary counterclockwise, inner boundary back.
  out += "<path fill-rule=\"evenodd\" fill=\"" + style.violinFill +
         "\" stroke=\"" + style.violinStroke + "\" stroke-width=\"1\" d=\"";
  const std::size_t G = g.gridSize;
  for (std::size_t j = 0; j <= G; ++j) {
    const std::size_t k = j % G;
    const auto [x, y] =
        px(g.gridAngles[k], g.ringBase + 0.5 * g.thickness[k]);
    detail::appendf(out, "%c%.3f %.3f ", j == 0 ? 'M' : 'L', x, y);
  }
  out += "Z ";
  for (std::size_t j = 0; j <= G; ++j) {
    const std::size_t k = (G - j) % G;
    const auto [x, y] =
        px(g.gridAngles[k], g.ringBase - 0.5 * g.thickness[k]);
    detail::appendf(out, "%c%.3f %.3f ", j == 0 ? 'M' : 'L', x, y);
  }
  out += "Z\"/>\n";

  // Interquartile box: an arc along the ring base from qLow to qHigh.
  out += "<path fill=\"none\" stroke=\"" + style.boxColor +
         "\" stroke-width=\"";
  detail::appendf(out, "%.3f", style.boxWidthPx);
  out += "\" d=\"";
  const int steps = 96;
  for (int j = 0; j <= steps; ++j) {
    const double a =
        g.qLow + (g.qHigh - g.qLow) * static_cast<double>(j) / steps;
    const auto [x, y] = px(a, g.ringBase);
    detail::appendf(out, "%c%.3f %.3f ", j == 0 ? 'M' : 'L', x, y);
  }
  out += "\"/>\n";

  // White median tick across the box.
  {
    const double half = 0.55 * style.boxWidthPx / R;
    const auto [x1, y1] = px(g.median, g.ringBase - half);
    const auto [x2, y2] = px(g.median, g.ringBase + half);
    detail::appendf(out,
                    "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" "
                    "stroke=\"%s\" stroke-width=\"3\"/>\n",
                    x1, y1, x2, y2, style.medianColor.c_str());
  }

  // Flagged points, outside the ring.
  for (double a : g.flaggedAngles) {
    const auto [x, y] = px(a, g.ringBase + g.densityScale + 0.10);
    detail::appendf(out,
                    "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" "
                    "fill=\"%s\"/>\n",
                    x, y, style.flagMarkerPx, style.flagColor.c_str());
  }
  out += "</svg>\n";
  return out;
}

}  // namespace circstat
