#include "gsm/error.hpp"

namespace gsm {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonConvergence:
      return "NonConvergence";
    case ErrorKind::kInstanceTooLarge:
      return "InstanceTooLarge";
    case ErrorKind::kNotAlternating:
      return "NotAlternating";
    case ErrorKind::kRootMatched:
      return "RootMatched";
    case ErrorKind::kSideSizeMismatch:
      return "SideSizeMismatch";
    case ErrorKind::kNoProfile:
      return "NoProfile";
    case ErrorKind::kIterationCapExceeded:
      return "IterationCapExceeded";
    case ErrorKind::kFeasibilityViolation:
      return "FeasibilityViolation";
    case ErrorKind::kNotLinear:
      return "NotLinear";
    case ErrorKind::kGenerationFailed:
      return "GenerationFailed";
    case ErrorKind::kInvariantViolation:
      return "InvariantViolation";
  }
  return "Error";
}

}  // namespace gsm
