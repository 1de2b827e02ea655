#pragma once

#include <stdexcept>
#include <string>

namespace ruin {

enum class ErrorKind {
  NonUnitDivisor,
  VariantMismatch,
  TruncationExceeded,
  DegenerateAlpha,
  IndexOutOfRange,
  EqualIndices,
  SingularQ,
  SingularSystem,
  StrataTooLow,
  TooClose,
  BranchAmbiguity,
  DivergentGeometricSum,
  BudgetExceeded,
  EmptyPath,
  StepCapExceeded,
  HomogeneousOnly,
  TooFewSamples,
  TailNotDecayed,
  InvalidParams,
  ParseError,
};

const char* error_kind_name(ErrorKind k);

class RuinError : public std::runtime_error {
 public:
  RuinError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ruin
