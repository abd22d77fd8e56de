#pragma once

#include <stdexcept>
#include <string>

namespace e6iso {

enum class ErrorCode {
  DivisionByZero,
  DescriptorMismatch,
  ZeroInput,
  InseparablePolynomial,
  NotDegreeTwo,
  AlgebraMismatch,
  NoneExist,
  NegativePower,
  NotPrimitiveIdempotent,
  SingularMatrix,
  GammaNotUnit,
  DimensionMismatch,
  NotSingular,
  NotInnerIdeal,
  ConstructionFailed,
  RankMismatch,
  TripleMismatch,
  NotKSubmodule,
  NotAWitness,
  TraceZeroS,
  CharTwoUnsupportedShape,
  NotACongruence,
  ZeroGenerator,
  UnsupportedBase,
  ZeroGamma,
  BadGamma,
  UndecidedRegime,
  ConfigParseError,
  InvalidArgument,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace e6iso
