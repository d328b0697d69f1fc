#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cutpaste {

enum class ErrorCode {
  NonHermitian,
  NotUnitary,
  NotCompletelyPositive,
  DimensionMismatch,
  BadDimension,
  OutOfRange,
  InvalidState,
  ToleranceConflict,
  NoBracket,
  ElementInconsistent,
  ZeroSuccessProbability,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Failures that come from numerics rather than from bad input.
bool is_numerical_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cutpaste
