#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fireprox {

enum class ErrorKind {
  NonFiniteField,
  ConfidenceOutOfRange,
  NegativeDimension,
  ZeroFrameArea,
  AreaExceedsFrame,
  NonPositiveReference,
  IndexOutOfRange,
  RiskOutOfRange,
  OutOfOrderFrame,
  MalformedJson,
  SchemaViolation,
  MismatchedReport,
  SpecLengthMismatch,
  MissingScale,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engine. `kind()` is stable and machine-checkable;
/// `what()` carries the offending field path (e.g. "fires[2].confidence").
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Configuration problems map to CLI exit code 2, everything else to 1.
  bool is_config_error() const noexcept {
    return kind_ == ErrorKind::InvalidConfig || kind_ == ErrorKind::MissingScale;
  }

 private:
  ErrorKind kind_;
};

}  // namespace fireprox
