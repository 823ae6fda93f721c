#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kleinb {

enum class ErrorCode {
  InvalidArgument,
  ClosedChannel,
  InvalidSpinIndex,
  NegativeField,
  SingularStep,
  SingularMatrix,
  OscillatorRange,
  GridTooLarge,
  EvanescentBranch,
};

std::string_view to_string(ErrorCode code) noexcept;

// Numerical failures (as opposed to rejected inputs).
bool is_numerical(ErrorCode code) noexcept;

class ScatterError : public std::runtime_error {
 public:
  ScatterError(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kleinb
