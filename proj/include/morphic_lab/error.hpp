#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace morphic_lab {

enum class ErrorCode {
  kNotAssociative,
  kNoIdentity,
  kNoInverse,
  kNotAPermutation,
  kClosureExceedsCap,
  kParameterOutOfRange,
  kOddPrimeRequired,
  kNotNormal,
  kNotAPGroup,
  kNotAbelian,
  kAbelianInput,
  kParentMismatch,
  kOrderCapExceeded,
  kSearchBudgetExceeded,
  kBudgetExceeded,
  kDimensionMismatch,
  kAOnU,
  kNotMaximal,
  kNotMorphicTriple,
  kParseError,
  kInternalConsistency,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// command-line front end can map it onto a stable exit status.
class MorphicError : public std::runtime_error {
 public:
  MorphicError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace morphic_lab
