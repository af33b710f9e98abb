#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nevan {

enum class ErrorCode {
  PoleProximity,
  Overflow,
  OrderTooLarge,
  BoundaryPole,
  RootFindingFailure,
  Unsupported,
  ToleranceNotMet,
  SyntaxError,
  EmptyPolynomial,
  DegreeViolation,
  DomainError,
  RadiusOrder,
  OrderError,
  ZeroConstantTerm,
  NormalizationError,
  GridTooSmall,
  InvalidModel,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. The code identifies the failure class,
/// the message carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nevan
