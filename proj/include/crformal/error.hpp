#pragma once

#include <stdexcept>
#include <string>

namespace crformal {

/// Failure categories surfaced by the library. The C API maps each of these
/// onto a stable integer status code (see crformal.h).
enum class ErrorCode {
  ArityMismatch = 1,
  IndexOutOfRange,
  NotPointed,
  NotAUnit,
  DegreeRequired,
  DegreeOverflow,
  ImplicitRewriteRequired,
  DivisionUncertifiable,
  NotSolvableAtTruncation,
  NonSquare,
  NoWitness,
  InconsistentData,
  MissingJet,
  FieldRestriction,
  TypeMismatch,
  InvalidArgument,
  ConstructionFailed,
  DimensionMismatch,
  TrordUndefined,
  Syntax,
  UndeclaredName,
  NonGaussianLiteral,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace crformal
