#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splab {

enum class ErrorKind {
  InvalidArgument,
  ShapeMismatch,
  NonFinite,
  RankDeficient,
  ConvergenceFailure,
  NotDiagonalizable,
  Singular,
  NotOrthonormal,
  CrossCheckFailure,
  EmptySide,
  BoundaryAmbiguity,
  AssignmentAmbiguous,
  GapViolated,
  SizeCap,
  EnclosureViolated,
  ResolventSingular,
  SpecViolation,
  IndexOutOfRange,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical failures as opposed to bad input or unmet assumptions.
bool is_numerical(ErrorKind kind);

}  // namespace splab
