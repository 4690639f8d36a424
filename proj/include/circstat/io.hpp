#pragma once

// Angle-file ingestion and result formatting. The native format is one angle
// per line with '#' comments; CSV files with an `angle` column are also
// accepted. All floating point output is printed at 12 significant digits.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "circstat/angle.hpp"
#include "circstat/datasets.hpp"
#include "circstat/errors.hpp"

namespace circstat {

enum class AngleUnit { Radians, Degrees };

struct DatasetSpec {
  std::string source;  // embedded name (frogs|seastars|larva) or a file path
  AngleUnit unit = AngleUnit::Radians;
};

/// Format a double with 12 significant digits (stable across runs).
inline std::string formatNumber(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

/// Round a double to its 12-significant-digit representation.
inline double round12(double x) { return std::stod(formatNumber(x)); }

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> splitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline double parseValue(const std::string& token, std::size_t lineNo) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) {
      throw ParseError("line " + std::to_string(lineNo) +
                       ": trailing characters after number: '" + token + "'");
    }
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(lineNo) +
                     ": not a number: '" + token + "'");
  }
}

}  // namespace detail

/// Parse angles from a stream (native or CSV-with-angle-column layout).
inline AngleSample parseAngles(std::istream& in, AngleUnit unit) {
  std::vector<double> values;
  std::string line;
  std::size_t lineNo = 0;
  long angleColumn = -1;
  bool sawHeader = false;
  while (std::getline(in, line)) {
    ++lineNo;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!sawHeader && t.find(',') != std::string::npos) {
      // Possible CSV header; look for an `angle` column.
      const auto cols = detail::splitCsv(t);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "angle") angleColumn = static_cast<long>(i);
      }
      sawHeader = true;
      if (angleColumn >= 0) continue;
      throw ParseError("line " + std::to_string(lineNo) +
                       ": CSV input needs an 'angle' column");
    }
    if (angleColumn >= 0) {
      const auto cols = detail::splitCsv(t);
      if (static_cast<long>(cols.size()) <= angleColumn) {
        throw ParseError("line " + std::to_string(lineNo) +
                         ": missing angle column");
      }
      values.push_back(
          detail::parseValue(cols[static_cast<std::size_t>(angleColumn)],
                             lineNo));
    } else {
      sawHeader = true;
      values.push_back(detail::parseValue(t, lineNo));
    }
  }
  if (values.empty()) throw ParseError("empty dataset");
  if (unit == AngleUnit::Degrees) {
    for (double& v : values) v *= kPi / 180.0;
  }
  return AngleSample(std::move(values));
}

/// Load a dataset: embedded by name, otherwise from a file path.
inline AngleSample ingest(const DatasetSpec& spec) {
  if (spec.source == "frogs" || spec.source == "seastars" ||
      spec.source == "larva") {
    return embeddedDataset(spec.source);
  }
  std::ifstream f(spec.source);
  if (!f) throw ParseError("cannot open input file: " + spec.source);
  return parseAngles(f, spec.unit);
}

/// Write a sample in the native angle-file format (radians).
inline void emit(const AngleSample& s, std::ostream& out) {
  for (double a : s) out << formatNumber(a) << "\n";
}

}  // namespace circstat
