#include "contactgeom/errors.hpp"

namespace contactgeom {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OffSphere: return "OffSphere";
    case ErrorKind::NotTangent: return "NotTangent";
    case ErrorKind::DegenerateParametrization: return "DegenerateParametrization";
    case ErrorKind::DegenerateContact: return "DegenerateContact";
    case ErrorKind::DegenerateMetric: return "DegenerateMetric";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::AmplitudeTooLarge: return "AmplitudeTooLarge";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

GeometryError::GeometryError(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace contactgeom
