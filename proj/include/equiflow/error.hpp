#pragma once

#include <stdexcept>
#include <string>

namespace equiflow {

enum class ErrorKind {
  kInvalidArgument,
  kPrecisionExhausted,
  kOverflow,
  kInsufficientConvergents,
  kNonconvergentQuadrature,
  kUnresolvedTangency,
  kUnsupportedProfile,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kPrecisionExhausted: return "precision-exhausted";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kInsufficientConvergents: return "insufficient-convergents";
    case ErrorKind::kNonconvergentQuadrature: return "nonconvergent-quadrature";
    case ErrorKind::kUnresolvedTangency: return "unresolved-tangency";
    case ErrorKind::kUnsupportedProfile: return "unsupported-profile";
  }
  return "unknown";
}

/// Every failure raised by the library. The kind decides the CLI exit code:
/// budget exhaustion (precision, overflow, quadrature) maps to 2, everything
/// else to 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool is_numerical_budget() const noexcept {
    return kind_ == ErrorKind::kPrecisionExhausted || kind_ == ErrorKind::kOverflow ||
           kind_ == ErrorKind::kNonconvergentQuadrature;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::kInvalidArgument, message);
}

}  // namespace equiflow
