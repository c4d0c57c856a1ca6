#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace twoatom {

enum class ErrorKind {
  NotHermitian,
  TraceNotOne,
  NotPSD,
  NonFinite,
  NotNormalized,
  OutOfRange,
  NotAProbabilityVector,
  InvalidParams,
  InvalidConfig,
  StepTooLarge,
  EigenFailure,
  DegenerateAt,
  ParseError,
  NotXForm,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotAProbabilityVector: return "NotAProbabilityVector";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::DegenerateAt: return "DegenerateAt";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotXForm: return "NotXForm";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable kind. `residual` holds the size of
/// the violated invariant where one exists; `position` is set by the parser.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double residual = 0.0,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        residual_(residual),
        position_(position) {}

  ErrorKind kind() const noexcept { return kind_; }
  double residual() const noexcept { return residual_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  double residual_;
  std::optional<std::size_t> position_;
};

}  // namespace twoatom
