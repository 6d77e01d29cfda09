#include <crformal/error.hpp>

namespace crformal {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::DegreeRequired: return "DegreeRequired";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::ImplicitRewriteRequired: return "ImplicitRewriteRequired";
    case ErrorCode::DivisionUncertifiable: return "DivisionUncertifiable";
    case ErrorCode::NotSolvableAtTruncation: return "NotSolvableAtTruncation";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::InconsistentData: return "InconsistentData";
    case ErrorCode::MissingJet: return "MissingJet";
    case ErrorCode::FieldRestriction: return "FieldRestriction";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TrordUndefined: return "TrordUndefined";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::UndeclaredName: return "UndeclaredName";
    case ErrorCode::NonGaussianLiteral: return "NonGaussianLiteral";
  }
  return "Unknown";
}

}  // namespace crformal
