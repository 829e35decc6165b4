#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace contactgeom {

enum class ErrorKind {
  OffSphere,
  NotTangent,
  DegenerateParametrization,
  DegenerateContact,
  DegenerateMetric,
  InvalidGrid,
  ParseError,
  RangeError,
  AmplitudeTooLarge,
  StepTooLarge,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported as a GeometryError
/// tagged with the kind of failure, so callers (the CLI in particular) can map
/// kinds onto exit codes without parsing messages.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace contactgeom
