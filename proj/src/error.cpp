#include "bbgroup/error.hpp"

namespace bbg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::InvalidDegree: return "InvalidDegree";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::RetryBudgetExhausted: return "RetryBudgetExhausted";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ExponentViolated: return "ExponentViolated";
    case ErrorKind::Undecided: return "Undecided";
    case ErrorKind::ExceedsKMax: return "ExceedsKMax";
    case ErrorKind::UnsupportedFlavor: return "UnsupportedFlavor";
    case ErrorKind::DivisorUnavailable: return "DivisorUnavailable";
    case ErrorKind::InvalidSubfieldDegree: return "InvalidSubfieldDegree";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace bbg
