#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slt {

enum class ErrorKind {
  // problem definition / configuration
  DomainOrder,
  NonpositiveP,
  SingularTransmission,
  SignAssumption,
  DegenerateBoundary,
  InvalidArgument,
  Index,
  IndexTooSmall,
  PieceMismatch,
  Parse,
  Io,
  Config,
  // numerical failures
  StepSizeUnderflow,
  NonFiniteState,
  NonConvergence,
  Consistency,
  DegenerateLeading,
  MaxIterations,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for failures of the numerics rather than of the input.
constexpr bool is_numerical(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::StepSizeUnderflow:
    case ErrorKind::NonFiniteState:
    case ErrorKind::NonConvergence:
    case ErrorKind::Consistency:
    case ErrorKind::DegenerateLeading:
    case ErrorKind::MaxIterations:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace slt
