#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plasmon {

enum class ErrorKind {
  NonPositiveRadius,
  DomainError,
  DegenerateContrast,
  DegenerateLambda,
  NoBracket,
  EigSolverFailure,
  SingularSystem,
  PointInsideInclusion,
  SeriesDivergence,
  RadiusOnBoundary,
  FDUnstable,
  StepRejected,
  SingularNormalEq,
  NotPositiveDefinite,
  InvalidArgument,
};

std::string_view error_name(ErrorKind kind);

/// Numerical failure raised by any module. The CLI maps it to exit code 1.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed configuration; carries the 1-based line number when known (0 otherwise).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string &what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace plasmon
