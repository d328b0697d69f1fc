#include "cutpaste/errors.hpp"

namespace cutpaste {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::ToleranceConflict: return "ToleranceConflict";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::ElementInconsistent: return "ElementInconsistent";
    case ErrorCode::ZeroSuccessProbability: return "ZeroSuccessProbability";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_numerical_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::ToleranceConflict:
    case ErrorCode::NoBracket:
    case ErrorCode::NotCompletelyPositive:
    case ErrorCode::ZeroSuccessProbability:
      return true;
    default:
      return false;
  }
}

}  // namespace cutpaste
