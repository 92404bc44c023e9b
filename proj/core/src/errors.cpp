#include "semired/errors.hpp"

namespace semired {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeValuation: return "NegativeValuation";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::ZeroDimensional: return "ZeroDimensional";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::UniquenessViolation: return "UniquenessViolation";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::GenericUnstable: return "GenericUnstable";
    case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace semired
