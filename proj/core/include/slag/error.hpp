#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slag {

enum class ErrorCode {
  InvalidInput,
  // geometry kernel
  ZeroTangent,
  LiftJump,
  OpenCurve,
  NotAlmostCalibrated,
  NotTransverse,
  NonIntegerDegree,
  // lawlor
  NonPositiveParameter,
  DimensionTooSmall,
  AngleSumViolation,
  NoConvergence,
  OutOfRange,
  FitFailure,
  TailDivergence,
  // stability
  ZeroBlockCharge,
  NoValidFiltration,
  MultipleValidFiltrations,
  NotDestabilizing,
  ConstraintViolation,
  IndexOutOfRange,
  // solomon
  NotExact,
  HomologyMismatch,
  DegenerateIntersection,
  StepTooLarge,
  // flow
  CFLViolation,
  SingularityReached,
  SelfIntersectionLost,
  // dhym
  PhaseOutOfRange,
  NonPositiveEigenvalue,
  ZeroDenominator,
  // tooling
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace slag
