#ifndef FLEXLINES_ERRORS_HPP
#define FLEXLINES_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace flex {

enum class ErrorCode {
  NonPrimeCharacteristic,
  ReducibleModulus,
  UnsupportedField,
  DivisionByZero,
  DescriptorMismatch,
  ZeroPolynomial,
  DegreeMismatch,
  DegreeTooLow,
  DegreeZeroInVariable,
  SingularMatrix,
  ParseError,
  NotSmooth,
  HessianIdenticallyZeroOnCurve,
  PointNotOnCurve,
  SingularAtPoint,
  PointNotOnLine,
  NonReducedCurve,
  HasLineComponent,
  EliminationDegenerate,
  NotSmoothCubic,
  CharacteristicThree,
  NoRationalFlex,
  NoCubeRootOfUnity,
  SingularMember,
  InvalidInput,
  UnexpectedDimension,
  DiscriminantNotSplit,
  BothMembersNonReduced,
  CuspVerificationFailed,
  RoundTripMismatch,
  NotInV,
  IncompleteOverBaseField,
  GenericMemberSingular,
  ResidualNonLinearFactors,
  IncompleteConfiguration,
  HypothesesNotMet,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace flex

#endif
