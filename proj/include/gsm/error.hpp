#ifndef GSM_ERROR_HPP
#define GSM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gsm {

enum class ErrorKind {
  kNonConvergence,
  kInstanceTooLarge,
  kNotAlternating,
  kRootMatched,
  kSideSizeMismatch,
  kNoProfile,
  kIterationCapExceeded,
  kFeasibilityViolation,
  kNotLinear,
  kGenerationFailed,
  kInvariantViolation,
};

const char* error_kind_name(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gsm

#endif  // GSM_ERROR_HPP
