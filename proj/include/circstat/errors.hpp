#pragma once

#include <stdexcept>
#include <string>

namespace circstat {

/// Stable process exit codes used by the CLI when an error escapes a command.
enum class ErrorCode : int {
  Parse = 2,
  Numeric = 3,
  NonUniqueMedian = 4,
  Explosion = 5,
};

/// Base class for all toolkit errors; carries the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed input data (bad angle file, empty dataset, unknown column).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(ErrorCode::Parse, msg) {}
};

/// Any numerical failure: invalid argument ranges, quadrature depth
/// exhaustion, root brackets without a sign change, overflow.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg)
      : Error(ErrorCode::Numeric, msg) {}
};

/// Argument outside the mathematically valid range of an operation.
class OutOfRangeError : public NumericError {
 public:
  explicit OutOfRangeError(const std::string& msg) : NumericError(msg) {}
};

/// Mean resultant length too small for a mean direction to be meaningful.
class DegenerateResultant : public NumericError {
 public:
  explicit DegenerateResultant(const std::string& msg) : NumericError(msg) {}
};

/// The set of circular-median minimizers is not a single point or arc.
class NonUniqueMedian : public Error {
 public:
  explicit NonUniqueMedian(const std::string& msg)
      : Error(ErrorCode::NonUniqueMedian, msg) {}
};

/// A dispersion statistic reached the boundary of its attainable range,
/// so no finite parameter estimate exists (breakdown state).
class ExplosionError : public Error {
 public:
  explicit ExplosionError(const std::string& msg)
      : Error(ErrorCode::Explosion, msg) {}
};

}  // namespace circstat
