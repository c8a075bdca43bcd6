#include "vnfscale/params.hpp"

#include <cmath>
#include <string>

#include "vnfscale/errors.hpp"

namespace vnfscale {

namespace {

bool positive_rate(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const SystemParams& p) {
  if (!positive_rate(p.lambda)) throw ValidationError(Constraint::kArrivalRatePositive, "lambda=" + std::to_string(p.lambda));
  if (!positive_rate(p.mu)) throw ValidationError(Constraint::kServiceRatePositive, "mu=" + std::to_string(p.mu));
  if (!positive_rate(p.alpha)) throw ValidationError(Constraint::kSetupRatePositive, "alpha=" + std::to_string(p.alpha));
  if (p.n0 < 1) throw ValidationError(Constraint::kLegacyAtLeastOne, "n0=" + std::to_string(p.n0));
  if (p.k < 0) throw ValidationError(Constraint::kInstancesNonNegative, "k=" + std::to_string(p.k));
  if (p.K < p.total_servers()) {
    throw ValidationError(Constraint::kCapacityAtLeastServers,
                          "K=" + std::to_string(p.K) + " < N=" + std::to_string(p.total_servers()));
  }
}

SystemParams default_params() {
  return SystemParams{.lambda = 130.0, .mu = 1.0, .alpha = 0.005, .n0 = 110, .k = 28, .K = 250};
}

}  // namespace vnfscale
