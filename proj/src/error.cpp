#include "roep/error.hpp"

namespace roep {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UtilityNotTotal: return "UtilityNotTotal";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::ZeroExtent: return "ZeroExtent";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::FilterExhausted: return "FilterExhausted";
    case ErrorCode::InvariantBreach: return "InvariantBreach";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace roep
