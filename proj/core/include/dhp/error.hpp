#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dhp {

enum class ErrorCode {
  kInvalidInput,
  kInvalidModulus,
  kIncompleteFactorization,
  kDomainError,
  kInvalidOrder,
  kIncompatibleParameters,
  kBadGenerator,
  kSingularCurve,
  kOffCurveGenerator,
  kWrongOrder,
  kGroupMismatch,
  kRefusal,
  kNonInvertible,
  kInvalidExponent,
  kZeroDlog,
  kInvalidDivisor,
  kImprobableFailure,
  kInternalInconsistency,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this one exception type; callers
// branch on code() rather than on the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dhp
