#pragma once

// Command-line surface: estimate / detect / bias / are / study / violin /
// ifcurve. Kept in a header (with a thin main() elsewhere) so tests can run
// commands in-process and capture their output.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "circstat/angle.hpp"
#include "circstat/core.hpp"
#include "circstat/datasets.hpp"
#include "circstat/detection.hpp"
#include "circstat/distributions.hpp"
#include "circstat/errors.hpp"
#include "circstat/io.hpp"
#include "circstat/robust.hpp"
#include "circstat/robustness.hpp"
#include "circstat/violin.hpp"

namespace circstat::cli {

inline constexpr const char* kVersion = "0.1.0";

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline ModelKind parseModel(const std::string& s) {
  if (s == "vm") return ModelKind::VonMises;
  if (s == "wn") return ModelKind::WrappedNormal;
  throw ParseError("unknown model: " + s + " (expected vm or wn)");
}

inline DispersionKind parseKind(const std::string& s) {
  if (s == "cmad") return DispersionKind::Cmad;
  if (s == "clms") return DispersionKind::Clms;
  if (s == "clts") return DispersionKind::Clts;
  if (s == "csd") return DispersionKind::Csd;
  throw ParseError("unknown dispersion kind: " + s);
}

inline ContaminationType parseContamination(const std::string& s) {
  if (s == "pointmass") return ContaminationType::PointMass;
  if (s == "meanshift") return ContaminationType::MeanShift;
  throw ParseError("unknown contamination type: " + s);
}

inline AngleUnit parseUnit(const std::string& s) {
  if (s == "radians" || s == "rad") return AngleUnit::Radians;
  if (s == "degrees" || s == "deg") return AngleUnit::Degrees;
  throw ParseError("unknown unit: " + s);
}

inline void writeOutput(const std::string& path, const std::string& content,
                        std::ostream& fallback) {
  if (path == "-") {
    fallback << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open output file: " + path);
  f << content;
}

inline std::string joinArgs(const std::vector<std::string>& args) {
  std::string s = "circstat";
  for (const auto& a : args) {
    s += ' ';
    s += a;
  }
  return s;
}

inline nlohmann::ordered_json provenance(const std::string& command,
                                         std::uint64_t seed,
                                         std::uint64_t configHash) {
  nlohmann::ordered_json p;
  p["command"] = command;
  p["version"] = kVersion;
  p["seed"] = seed;
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(configHash));
  p["configHash"] = buf;
  return p;
}

inline std::string csvHeader(const std::string& command, std::uint64_t seed,
                             std::uint64_t configHash) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(configHash));
  std::string s;
  s += "# command: " + command + "\n";
  s += "# version: " + std::string(kVersion) + "\n";
  s += "# seed: " + std::to_string(seed) + "\n";
  s += "# config: " + std::string(buf) + "\n";
  return s;
}

/// Run the CLI on tokenized arguments (without the program name). Output is
/// written to `out`, machine-readable errors to `err`; returns the process
/// exit code.
inline int runCli(const std::vector<std::string>& args, std::ostream& out,
                  std::ostream& err) {
  CLI::App app{"Robust circular statistics toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  if (const char* env = std::getenv("CIRCSTAT_SEED")) {
    seed = std::strtoull(env, nullptr, 10);
  }
  app.add_option("--seed", seed, "Seed for all stochastic commands");

  // Common option storage.
  std::string data, unit = "radians", model = "vm", kind = "clms";
  std::string outPath = "-";
  double alpha = 0.01;

  auto* est = app.add_subcommand("estimate", "Dispersion and parameter "
                                             "estimate for a dataset");
  est->add_option("--data", data, "Embedded name or file path")->required();
  est->add_option("--unit", unit, "radians|degrees");
  est->add_option("--kind", kind, "cmad|clms|clts|csd");
  est->add_option("--model", model, "vm|wn");
  est->add_option("--out", outPath, "Output path or - for stdout");

  auto* det = app.add_subcommand("detect", "Flag anomalous directions");
  bool baseline = false;
  det->add_option("--data", data, "Embedded name or file path")->required();
  det->add_option("--unit", unit, "radians|degrees");
  det->add_option("--model", model, "vm|wn");
  det->add_option("--kind", kind, "cmad|clms|clts|csd");
  det->add_option("--alpha", alpha, "Expected clean flag fraction per side");
  det->add_flag("--baseline", baseline,
                "Use the classical location/concentration chain");
  det->add_option("--out", outPath, "Output path or - for stdout");

  auto* bias = app.add_subcommand("bias", "Monte Carlo relative-bias curves");
  double param = 5.0, epsilon = 0.1;
  std::size_t grid = 181, sampleSize = 5000;
  std::string ctype = "pointmass";
  std::vector<std::string> kinds;
  bias->add_option("--model", model, "vm|wn");
  bias->add_option("--param", param, "Model parameter (kappa or sigma)");
  bias->add_option("--epsilon", epsilon, "Contamination fraction");
  bias->add_option("--type", ctype, "pointmass|meanshift");
  bias->add_option("--kind", kinds, "Dispersion kinds (default: all)");
  bias->add_option("--grid", grid, "Grid resolution");
  bias->add_option("--n", sampleSize, "Monte Carlo sample size");
  bias->add_option("--out", outPath, "Output path or - for stdout");

  auto* areCmd = app.add_subcommand("are", "Asymptotic relative efficiency");
  std::vector<double> params;
  areCmd->add_option("--model", model, "vm|wn");
  areCmd->add_option("--kind", kinds, "Dispersion kinds (default: robust)");
  areCmd->add_option("--param", params, "Parameter values")->required();
  areCmd->add_option("--out", outPath, "Output path or - for stdout");

  auto* study = app.add_subcommand("study", "Contamination simulation study");
  std::vector<double> epsilons;
  std::size_t studyN = 200, reps = 500;
  study->add_option("--model", model, "vm|wn");
  study->add_option("--param", params, "Parameter values (default: paper)");
  study->add_option("--epsilon", epsilons,
                    "Contamination fractions (default 0 0.1 0.2)");
  study->add_option("--n", studyN, "Sample size per replication");
  study->add_option("--reps", reps, "Replications per cell");
  study->add_option("--type", ctype, "pointmass|meanshift");
  study->add_option("--out", outPath, "Output path or - for stdout");

  auto* violin = app.add_subcommand("violin", "Circular violin plot SVG");
  double bandwidth = 0.0;
  std::size_t vGrid = 512;
  int canvas = 640;
  violin->add_option("--data", data, "Embedded name or file path")
      ->required();
  violin->add_option("--unit", unit, "radians|degrees");
  violin->add_option("--model", model, "vm|wn");
  violin->add_option("--kind", kind, "cmad|clms|clts|csd");
  violin->add_option("--alpha", alpha, "Detection level");
  violin->add_option("--bandwidth", bandwidth,
                     "Kernel concentration (0 = plug-in rule)");
  violin->add_option("--grid", vGrid, "Density grid size");
  violin->add_option("--size", canvas, "Canvas size in px");
  violin->add_option("--out", outPath, "Output path or - for stdout");

  auto* ifc = app.add_subcommand("ifcurve", "Influence function curves");
  bool transformed = false;
  ifc->add_option("--model", model, "vm|wn");
  ifc->add_option("--param", param, "Model parameter");
  ifc->add_option("--kind", kinds, "Dispersion kinds (default: all)");
  ifc->add_option("--grid", grid, "Grid resolution");
  ifc->add_flag("--transformed", transformed,
                "Chain-rule IF of the parameter estimator");
  ifc->add_option("--out", outPath, "Output path or - for stdout");

  // Global options such as --seed may appear after the subcommand name.
  for (CLI::App* sc : {est, det, bias, areCmd, study, violin, ifc}) {
    sc->fallthrough();
  }

  std::vector<const char*> argv;
  argv.push_back("circstat");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help and friends
      std::ostringstream help;
      const int rc = app.exit(e, help, help);
      out << help.str();
      return rc;
    }
    nlohmann::ordered_json j;
    j["error"] = {{"code", 2}, {"message", e.what()}};
    err << j.dump(2) << "\n";
    return 2;
  }

  const std::string commandLine = joinArgs(args);
  const std::uint64_t configHash = fnv1a(commandLine);

  try {
    if (*est) {
      const AngleSample s = ingest({data, parseUnit(unit)});
      const EstimateReport r =
          estimateParameter(s, parseKind(kind), parseModel(model));
      if (r.exploded || r.imploded) {
        nlohmann::ordered_json j;
        j["error"] = {
            {"code", 5},
            {"message", r.exploded
                            ? "dispersion at its supremum (explosion)"
                            : "dispersion is zero (implosion)"},
            {"rawDispersion", round12(r.rawDispersion)},
        };
        err << j.dump(2) << "\n";
        return 5;
      }
      nlohmann::ordered_json j;
      j["provenance"] = provenance(commandLine, seed, configHash);
      j["data"] = {{"source", data}, {"n", s.size()}};
      j["kind"] = to_string(r.kind);
      j["model"] = to_string(r.model);
      j["rawDispersion"] = round12(r.rawDispersion);
      j["mappedCsd"] = round12(*r.mappedCsd);
      j["parameter"] = round12(*r.parameter);
      j["halfSampleSize"] = r.halfSampleSize;
      if (r.window) {
        j["window"] = {{"start", round12(r.window->start)},
                       {"end", round12(r.window->end)}};
      }
      writeOutput(outPath, j.dump(2) + "\n", out);
      return 0;
    }

    if (*det) {
      const AngleSample s = ingest({data, parseUnit(unit)});
      DetectionConfig cfg;
      cfg.model = parseModel(model);
      cfg.alpha = alpha;
      cfg.kind = parseKind(kind);
      cfg.baselineMode = baseline;
      const DetectionReport r = detect(s, cfg);
      nlohmann::ordered_json j;
      j["provenance"] = provenance(commandLine, seed, configHash);
      j["median"] = round12(r.median);
      j["parameter"] = round12(r.parameter);
      j["cutoff"] = round12(r.cutoff);
      j["alpha"] = round12(r.alpha);
      j["model"] = to_string(r.model);
      j["flaggedCount"] = r.flaggedCount;
      if (!r.warning.empty()) j["warning"] = r.warning;
      nlohmann::ordered_json pts = nlohmann::ordered_json::array();
      for (const DetectionPoint& p : r.points) {
        pts.push_back({{"index", p.index},
                       {"angle", round12(p.angle)},
                       {"distance", round12(p.distance)},
                       {"flagged", p.flagged}});
      }
      j["points"] = pts;
      writeOutput(outPath, j.dump(2) + "\n", out);
      return 0;
    }

    if (*bias) {
      if (kinds.empty()) kinds = {"cmad", "clms", "clts", "csd"};
      const ModelKind fam = parseModel(model);
      const ContaminationType type = parseContamination(ctype);
      std::string csv = csvHeader(commandLine, seed, configHash);
      csv += "theta,relBias,kind,epsilon,type,seed\n";
      for (const std::string& k : kinds) {
        const BiasCurve c =
            biasCurve({fam, 0.0, param}, parseKind(k), epsilon, type, grid,
                      sampleSize, seed);
        for (const BiasCurvePoint& p : c.points) {
          csv += formatNumber(p.theta) + "," + formatNumber(p.relBias) + "," +
                 k + "," + formatNumber(epsilon) + "," + to_string(type) +
                 "," + std::to_string(seed) + "\n";
        }
      }
      writeOutput(outPath, csv, out);
      return 0;
    }

    if (*areCmd) {
      if (kinds.empty()) kinds = {"cmad", "clms", "clts"};
      const ModelKind fam = parseModel(model);
      std::string csv = csvHeader(commandLine, seed, configHash);
      csv += "param,kind,are\n";
      for (double p : params) {
        for (const std::string& k : kinds) {
          const double v = are({fam, 0.0, p}, parseKind(k));
          csv += formatNumber(p) + "," + k + "," + formatNumber(v) + "\n";
        }
      }
      writeOutput(outPath, csv, out);
      return 0;
    }

    if (*study) {
      const ModelKind fam = parseModel(model);
      if (params.empty()) {
        params = fam == ModelKind::VonMises
                     ? std::vector<double>{1.0, 2.0, 5.0}
                     : std::vector<double>{0.5, 1.0, 1.2};
      }
      if (epsilons.empty()) epsilons = {0.0, 0.1, 0.2};
      const auto rows =
          contaminationStudy(fam, params, epsilons, studyN, reps,
                             parseContamination(ctype), seed);
      std::string csv = csvHeader(commandLine, seed, configHash);
      csv += "param,epsilon,estimator,min,q1,median,q3,max,failures\n";
      for (const StudyRow& r : rows) {
        csv += formatNumber(r.param) + "," + formatNumber(r.epsilon) + "," +
               r.estimator + "," + formatNumber(r.summary.min) + "," +
               formatNumber(r.summary.q1) + "," +
               formatNumber(r.summary.median) + "," +
               formatNumber(r.summary.q3) + "," +
               formatNumber(r.summary.max) + "," +
               std::to_string(r.failures) + "\n";
      }
      writeOutput(outPath, csv, out);
      return 0;
    }

    if (*violin) {
      const AngleSample s = ingest({data, parseUnit(unit)});
      DetectionConfig cfg;
      cfg.model = parseModel(model);
      cfg.alpha = alpha;
      cfg.kind = parseKind(kind);
      const DetectionReport r = detect(s, cfg);
      KdeSpec spec;
      spec.kernelConcentration = bandwidth;
      spec.gridSize = vGrid;
      const ViolinGeometry g = buildViolin(s, r, spec);
      SvgStyle style;
      style.canvasPx = canvas;
      style.ringRadiusPx = 0.30 * canvas;
      writeOutput(outPath, renderSvg(g, style), out);
      return 0;
    }

    if (*ifc) {
      if (kinds.empty()) kinds = {"cmad", "clms", "clts", "csd"};
      const ModelKind fam = parseModel(model);
      const CircularModel m{fam, 0.0, param};
      std::string csv = csvHeader(commandLine, seed, configHash);
      csv += "theta,ifValue,kind,param,model,transformed\n";
      for (const std::string& k : kinds) {
        const DispersionKind dk = parseKind(k);
        for (std::size_t gIdx = 0; gIdx < grid; ++gIdx) {
          const double y = -kPi + kTwoPi * static_cast<double>(gIdx) /
                                      static_cast<double>(grid);
          const double v =
              transformed ? transformedIf(m, dk, y) : influence(m, dk, y);
          csv += formatNumber(y) + "," + formatNumber(v) + "," + k + "," +
                 formatNumber(param) + "," + model + "," +
                 (transformed ? "1" : "0") + "\n";
        }
      }
      writeOutput(outPath, csv, out);
      return 0;
    }
  } catch (const Error& e) {
    nlohmann::ordered_json j;
    j["error"] = {{"code", static_cast<int>(e.code())},
                  {"message", e.what()}};
    err << j.dump(2) << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    nlohmann::ordered_json j;
    j["error"] = {{"code", 3}, {"message", e.what()}};
    err << j.dump(2) << "\n";
    return 3;
  }
  return 0;
}

}  // namespace circstat::cli
