#include "stefan/error.hpp"

namespace stefan {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::UnsupportedOrder: return "unsupported-order";
    case ErrorKind::NonFinite: return "non-finite-input";
    case ErrorKind::DegenerateGeometry: return "degenerate-geometry";
    case ErrorKind::RejectionFailure: return "rejection-failure";
    case ErrorKind::BracketFailure: return "bracket-failure";
    case ErrorKind::DomainError: return "domain-error";
    case ErrorKind::NoExactSolution: return "no-exact-solution";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::StepInstability: return "step-instability";
    case ErrorKind::ConfigError: return "config-error";
    case ErrorKind::IoError: return "io-error";
    }
    return "error";
}

} // namespace stefan
