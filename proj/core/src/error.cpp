#include "dhp/error.hpp"

namespace dhp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kInvalidModulus: return "invalid-modulus";
    case ErrorCode::kIncompleteFactorization: return "incomplete-factorization";
    case ErrorCode::kDomainError: return "domain-error";
    case ErrorCode::kInvalidOrder: return "invalid-order";
    case ErrorCode::kIncompatibleParameters: return "incompatible-parameters";
    case ErrorCode::kBadGenerator: return "bad-generator";
    case ErrorCode::kSingularCurve: return "singular-curve";
    case ErrorCode::kOffCurveGenerator: return "off-curve-generator";
    case ErrorCode::kWrongOrder: return "wrong-order";
    case ErrorCode::kGroupMismatch: return "group-mismatch";
    case ErrorCode::kRefusal: return "refusal";
    case ErrorCode::kNonInvertible: return "non-invertible";
    case ErrorCode::kInvalidExponent: return "invalid-exponent";
    case ErrorCode::kZeroDlog: return "zero-dlog";
    case ErrorCode::kInvalidDivisor: return "invalid-divisor";
    case ErrorCode::kImprobableFailure: return "improbable-failure";
    case ErrorCode::kInternalInconsistency: return "internal-inconsistency";
    case ErrorCode::kIoError: return "io-error";
  }
  return "unknown-error";
}

}  // namespace dhp
