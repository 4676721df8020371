#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace globalspin {

enum class ErrorCode {
  NotHermitian,
  NotUnitary,
  DimensionMismatch,
  IndexOutOfRange,
  EqualIndices,
  LengthMismatch,
  NegativeDuration,
  InvalidRegister,
  OverlappingPairs,
  NotUnitary2x2,
  EmptyAlphabet,
  BudgetExceeded,
  InvalidProblem,
  PointInsideWire,
  QuadratureFailure,
  ZeroFieldSite,
  NonpositiveGradient,
  UnrealizableAngles,
  DurationCapExceeded,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. Every failure the library reports carries a code
/// so callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the scheduler when a field pulse cannot be produced by the
/// device; remembers which op of the source circuit was at fault.
class UnrealizableAnglesError : public Error {
 public:
  UnrealizableAnglesError(std::size_t op_index, const std::string& what)
      : Error(ErrorCode::UnrealizableAngles, "op " + std::to_string(op_index) + ": " + what),
        op_index_(op_index) {}

  std::size_t op_index() const noexcept { return op_index_; }

 private:
  std::size_t op_index_;
};

}  // namespace globalspin
