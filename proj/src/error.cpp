#include "adi/error.hpp"

namespace adi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TriangleDegenerate: return "TriangleDegenerate";
    case ErrorKind::AngleDomain: return "AngleDomain";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NoCrossing: return "NoCrossing";
    case ErrorKind::QuadratureNoConverge: return "QuadratureNoConverge";
    case ErrorKind::MaxIterations: return "MaxIterations";
    case ErrorKind::NotUnimodal: return "NotUnimodal";
    case ErrorKind::WindowViolated: return "WindowViolated";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, long index)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      index_(index) {}

}  // namespace adi
