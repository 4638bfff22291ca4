#include "slag/error.hpp"

namespace slag {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ZeroTangent: return "ZeroTangent";
    case ErrorCode::LiftJump: return "LiftJump";
    case ErrorCode::OpenCurve: return "OpenCurve";
    case ErrorCode::NotAlmostCalibrated: return "NotAlmostCalibrated";
    case ErrorCode::NotTransverse: return "NotTransverse";
    case ErrorCode::NonIntegerDegree: return "NonIntegerDegree";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::AngleSumViolation: return "AngleSumViolation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::FitFailure: return "FitFailure";
    case ErrorCode::TailDivergence: return "TailDivergence";
    case ErrorCode::ZeroBlockCharge: return "ZeroBlockCharge";
    case ErrorCode::NoValidFiltration: return "NoValidFiltration";
    case ErrorCode::MultipleValidFiltrations: return "MultipleValidFiltrations";
    case ErrorCode::NotDestabilizing: return "NotDestabilizing";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::HomologyMismatch: return "HomologyMismatch";
    case ErrorCode::DegenerateIntersection: return "DegenerateIntersection";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::SingularityReached: return "SingularityReached";
    case ErrorCode::SelfIntersectionLost: return "SelfIntersectionLost";
    case ErrorCode::PhaseOutOfRange: return "PhaseOutOfRange";
    case ErrorCode::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace slag
