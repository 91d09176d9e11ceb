#include "slt/error.hpp"

namespace slt {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DomainOrder: return "DomainOrderError";
    case ErrorKind::NonpositiveP: return "NonpositiveP";
    case ErrorKind::SingularTransmission: return "SingularTransmission";
    case ErrorKind::SignAssumption: return "SignAssumptionError";
    case ErrorKind::DegenerateBoundary: return "DegenerateBoundary";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Index: return "IndexError";
    case ErrorKind::IndexTooSmall: return "IndexTooSmall";
    case ErrorKind::PieceMismatch: return "PieceMismatch";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::Consistency: return "ConsistencyError";
    case ErrorKind::DegenerateLeading: return "DegenerateLeading";
    case ErrorKind::MaxIterations: return "MaxIterations";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace slt
