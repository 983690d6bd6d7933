#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace roep {

enum class ErrorCode {
  DuplicateElement,
  UnknownElement,
  CycleDetected,
  EmptySubset,
  InvalidArgument,
  ValidationError,
  ParseError,
  UtilityNotTotal,
  HypothesisFailed,
  NoSolution,
  ZeroExtent,
  InvalidSpec,
  FilterExhausted,
  InvariantBreach,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace roep
