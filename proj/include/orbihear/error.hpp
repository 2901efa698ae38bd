#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbihear {

enum class ErrorCode {
  InvalidPolytope,
  InvalidInput,
  ParseError,
  TooManyFacets,
  PerturbationFailed,
  ZeroVector,
  DegenerateParameter,
  IndexOutOfRange,
  ShapeMismatch,
  ParallelFacets,
  FitFailure,
  InsufficientSamples,
  NoConsistentSigning,
  AmbiguousSigning,
  BalanceViolation,
  DegenerateInput,
  NonConvergence,
  EmptyIntermediate,
  TruncationTooCoarse,
  IllConditioned,
  MissingInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception. The code is stable and machine readable; the
/// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orbihear
