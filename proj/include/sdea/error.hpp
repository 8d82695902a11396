#pragma once

#include <stdexcept>
#include <string>

namespace sdea {

enum class ErrorCode {
  kZeroPolynomial,
  kInvalidInterval,
  kNonPositiveCoefficient,
  kNoImaginaryPole,
  kInvalidParams,
  kPoleAtFrequency,
  kDegenerateTermination,
  kDesiredExceedsCoupler,
  kBaselineNotPassive,
  kConfig,
};

const char* to_string(ErrorCode code);

/// Single exception type for all library failures; `code()` identifies the
/// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sdea
