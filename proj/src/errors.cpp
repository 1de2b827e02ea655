#include "ruin/errors.hpp"

namespace ruin {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonUnitDivisor: return "NonUnitDivisor";
    case ErrorKind::VariantMismatch: return "VariantMismatch";
    case ErrorKind::TruncationExceeded: return "TruncationExceeded";
    case ErrorKind::DegenerateAlpha: return "DegenerateAlpha";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EqualIndices: return "EqualIndices";
    case ErrorKind::SingularQ: return "SingularQ";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::StrataTooLow: return "StrataTooLow";
    case ErrorKind::TooClose: return "TooClose";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::DivergentGeometricSum: return "DivergentGeometricSum";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::EmptyPath: return "EmptyPath";
    case ErrorKind::StepCapExceeded: return "StepCapExceeded";
    case ErrorKind::HomogeneousOnly: return "HomogeneousOnly";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::TailNotDecayed: return "TailNotDecayed";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ruin
