#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace surf {

enum class ErrorCode {
  NotConnected,
  DartMultiplyListed,
  DartMissing,
  NonIntegralGenus,
  NotACirculation,
  NotASpanningCotree,
  DimensionMismatch,
  VariantMismatch,
  NegativeCostDart,
  ZeroCostCycleDetected,
  UnreachedVertex,
  TieDetected,
  NotPlanar,
  InternalInvariantViolation,
  NonMonotone,
  WalkDisconnected,
  NegativeCycle,
  TooLarge,
  Infeasible,
  BadParameters,
};

std::string_view error_name(ErrorCode code);

// Internal errors signal a bug in this library rather than bad input.
bool is_internal(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail = {});
  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail = {});

}  // namespace surf
