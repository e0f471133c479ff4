#pragma once

#include <stdexcept>
#include <string>

namespace lietorus {

enum class ErrorCode {
  DivisionByZero,
  ContextMismatch,
  OrderNotDividingConductor,
  NonSplittingPolynomial,
  InvalidType,
  NotARootSystem,
  NotIrreducible,
  RootNotInSystem,
  SingularGram,
  NoRegularElementFound,
  NonSplitCartan,
  NotAdDiagonalizable,
  NotStable,
  NonSplitWeights,
  NotADiagramSymmetry,
  ExtensionInconsistent,
  ZeroScalar,
  NotInIsometryGroup,
  NonCommutingTuple,
  ConductorTooSmall,
  NonCartanInput,
  HomogeneityViolation,
  NotAdmissible,
  WindowTooSmall,
  NotAWitness,
  DivisibilityChainViolated,
  TooFewSlots,
  OrbitTooLarge,
  NotAnIsomorphism,
  NotATorusAutomorphism,
  NotAnAutomorphism,
  DimensionMismatch,
  SchemaError,
  IoError,
};

const char* error_name(ErrorCode c);

// True for the errors that mean "the working cyclotomic field is too small".
bool is_field_too_small(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string operation, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + " in " + operation + ": " + detail),
        code_(code),
        operation_(std::move(operation)),
        detail_(detail) {}

  ErrorCode code() const { return code_; }
  const std::string& operation() const { return operation_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string operation_;
  std::string detail_;
};

}  // namespace lietorus
