#include "vnfscale/errors.hpp"

namespace vnfscale {

const char* constraint_name(Constraint c) {
  switch (c) {
    case Constraint::kArrivalRatePositive: return "lambda > 0";
    case Constraint::kServiceRatePositive: return "mu > 0";
    case Constraint::kSetupRatePositive: return "alpha > 0";
    case Constraint::kLegacyAtLeastOne: return "n0 >= 1";
    case Constraint::kInstancesNonNegative: return "k >= 0";
    case Constraint::kCapacityAtLeastServers: return "K >= N (N = n0 + k)";
    case Constraint::kSimulationWindow: return "horizon > warmup >= 0";
    case Constraint::kReplications: return "replications >= 1";
    case Constraint::kDistribution: return "valid distribution";
    case Constraint::kCostSpec: return "valid cost specification";
    case Constraint::kSweepSpec: return "valid sweep";
    case Constraint::kUnknownField: return "known fields only";
  }
  return "unknown constraint";
}

ValidationError::ValidationError(Constraint constraint, const std::string& detail)
    : std::invalid_argument(std::string("violated ") + constraint_name(constraint) +
                            (detail.empty() ? "" : ": " + detail)),
      constraint_(constraint) {}

}  // namespace vnfscale
