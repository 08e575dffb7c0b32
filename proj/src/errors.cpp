#include "surf/errors.hpp"

namespace surf {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::DartMultiplyListed: return "DartMultiplyListed";
    case ErrorCode::DartMissing: return "DartMissing";
    case ErrorCode::NonIntegralGenus: return "NonIntegralGenus";
    case ErrorCode::NotACirculation: return "NotACirculation";
    case ErrorCode::NotASpanningCotree: return "NotASpanningCotree";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::VariantMismatch: return "VariantMismatch";
    case ErrorCode::NegativeCostDart: return "NegativeCostDart";
    case ErrorCode::ZeroCostCycleDetected: return "ZeroCostCycleDetected";
    case ErrorCode::UnreachedVertex: return "UnreachedVertex";
    case ErrorCode::TieDetected: return "TieDetected";
    case ErrorCode::NotPlanar: return "NotPlanar";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::WalkDisconnected: return "WalkDisconnected";
    case ErrorCode::NegativeCycle: return "NegativeCycle";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::BadParameters: return "BadParameters";
  }
  return "Unknown";
}

bool is_internal(ErrorCode code) {
  return code == ErrorCode::InternalInvariantViolation || code == ErrorCode::TieDetected;
}

static std::string compose(ErrorCode code, const std::string& detail) {
  std::string msg(error_name(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(compose(code, detail)), code_(code) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace surf
