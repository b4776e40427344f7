#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ginibre {

enum class ErrorKind {
  Domain,
  Overflow,
  NonConvergent,
  InvalidParameters,
  AccuracyLoss,
  BudgetExceeded,
  EnvelopeViolation,
  InsufficientData,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Overflow: return "OverflowError";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::AccuracyLoss: return "AccuracyLoss";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::EnvelopeViolation: return "EnvelopeViolation";
    case ErrorKind::InsufficientData: return "InsufficientData";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// that callers (the variance report, the CLI) can decide on a fallback
/// without parsing messages.
class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ginibre
