#include "fracstoch/error.hpp"

namespace fracstoch {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::GammaPole: return "GammaPole";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::InversionFailure: return "InversionFailure";
    case ErrorKind::EvaluationError: return "EvaluationError";
    case ErrorKind::SeriesDiverges: return "SeriesDiverges";
    case ErrorKind::HorizonExceeded: return "HorizonExceeded";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
  }
  return "Unknown";
}

}  // namespace fracstoch
