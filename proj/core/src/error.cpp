#include "kleinb/error.hpp"

namespace kleinb {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ClosedChannel: return "ClosedChannel";
    case ErrorCode::InvalidSpinIndex: return "InvalidSpinIndex";
    case ErrorCode::NegativeField: return "NegativeField";
    case ErrorCode::SingularStep: return "SingularStep";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::OscillatorRange: return "OscillatorRange";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::EvanescentBranch: return "EvanescentBranch";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  return code == ErrorCode::SingularStep || code == ErrorCode::SingularMatrix;
}

ScatterError::ScatterError(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace kleinb
