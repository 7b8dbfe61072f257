#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracstoch {

enum class ErrorKind {
  InvalidParams,
  NonConvergent,
  GammaPole,
  QuadratureFailure,
  InversionFailure,
  EvaluationError,
  SeriesDiverges,
  HorizonExceeded,
  StepTooLarge,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for every numerical and validation failure in the
/// library. The kind drives CLI exit codes: InvalidParams maps to 2, all
/// other kinds to 3.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::InvalidParams, what);
}

}  // namespace fracstoch
