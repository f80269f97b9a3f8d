#include "plasmon/errors.hpp"

namespace plasmon {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateContrast: return "DegenerateContrast";
    case ErrorKind::DegenerateLambda: return "DegenerateLambda";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::EigSolverFailure: return "EigSolverFailure";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::PointInsideInclusion: return "PointInsideInclusion";
    case ErrorKind::SeriesDivergence: return "SeriesDivergence";
    case ErrorKind::RadiusOnBoundary: return "RadiusOnBoundary";
    case ErrorKind::FDUnstable: return "FDUnstable";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::SingularNormalEq: return "SingularNormalEq";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace plasmon
