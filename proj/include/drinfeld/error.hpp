#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drinfeld {

enum class ErrorKind {
  Config,
  PrecisionExhausted,
  DivisionByApparentZero,
  IndeterminateValuation,
  GridTooCoarse,
  ResidueFieldTooSmall,
  NoConvergence,
  DivergentEvaluation,
  ShapeMismatch,
  PoleHit,
  IndependenceFailure,
  SingularSpecialization,
  NotAUnit,
  VerificationFailed,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace drinfeld
