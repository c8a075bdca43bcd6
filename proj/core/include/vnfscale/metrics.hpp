#pragma once

#include "vnfscale/stationary.hpp"

namespace vnfscale {

struct PerformanceMetrics {
  double L = 0.0;   // mean jobs in system
  double W = 0.0;   // mean response time of an accepted job, s
  double Wq = 0.0;  // mean queueing delay of an accepted job, s
  double Pb = 0.0;  // blocking probability
  double S = 0.0;   // mean dynamic instances active or in setup
};

// L = sum pi*j, Pb = sum_i pi(i,K), S = sum pi * (active instances +
// instances in setup). Wq is Little's law on the waiting line,
// sum pi*max(0, j - n_i) / (lambda (1 - Pb)), and W = Wq + 1/mu. In the
// stationary regime this equals L / (lambda (1 - Pb)), but it stays accurate
// at light load where L/throughput - 1/mu cancels. S is capped at k. Throws std::domain_error
// when Pb == 1.
PerformanceMetrics compute_metrics(const StationaryDistribution& distribution);

}  // namespace vnfscale
