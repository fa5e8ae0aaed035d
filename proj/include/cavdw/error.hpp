#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cavdw {

enum class ErrorKind {
  DegenerateGeometry,
  NonUnitOrientation,
  NonPositiveEnergy,
  InvalidParameter,
  NonUniformEnsemble,
  NotResonant,
  PerturbativeBreakdown,
  DimensionTooLarge,
  NoConvergence,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (CLI exit
// codes, scan status columns) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  Error(ErrorKind kind, std::string field, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + " [" + field +
                           "]: " + message),
        kind_(kind),
        field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Dotted key path of the offending config field, empty when not applicable.
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace cavdw
