#include "morphic_lab/error.hpp"

namespace morphic_lab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotAssociative: return "NotAssociative";
    case ErrorCode::kNoIdentity: return "NoIdentity";
    case ErrorCode::kNoInverse: return "NoInverse";
    case ErrorCode::kNotAPermutation: return "NotAPermutation";
    case ErrorCode::kClosureExceedsCap: return "ClosureExceedsCap";
    case ErrorCode::kParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::kOddPrimeRequired: return "OddPrimeRequired";
    case ErrorCode::kNotNormal: return "NotNormal";
    case ErrorCode::kNotAPGroup: return "NotAPGroup";
    case ErrorCode::kNotAbelian: return "NotAbelian";
    case ErrorCode::kAbelianInput: return "AbelianInput";
    case ErrorCode::kParentMismatch: return "ParentMismatch";
    case ErrorCode::kOrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::kSearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kAOnU: return "AonU";
    case ErrorCode::kNotMaximal: return "NotMaximal";
    case ErrorCode::kNotMorphicTriple: return "NotMorphicTriple";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

}  // namespace morphic_lab
