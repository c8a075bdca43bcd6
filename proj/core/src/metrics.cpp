#include "vnfscale/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace vnfscale {

PerformanceMetrics compute_metrics(const StationaryDistribution& distribution) {
  const StateSpace& space = distribution.state_space();
  const SystemParams& p = space.params();

  double jobs = 0.0;
  double instances = 0.0;
  double waiting = 0.0;
  double blocking = 0.0;
  for (int level = 0; level <= p.k; ++level) {
    const auto masses = distribution.level(level);
    const int first = space.first_jobs(level);
    for (std::size_t n = 0; n < masses.size(); ++n) {
      const int j = first + static_cast<int>(n);
      jobs += masses[n] * j;
      waiting += masses[n] * std::max(0, j - p.n0 - level);
      instances += masses[n] * (level + space.setup_count_unchecked(level, j));
    }
    blocking += masses.back();
  }

  if (blocking >= 1.0) throw std::domain_error("blocking probability is 1; response time undefined");

  PerformanceMetrics m;
  m.L = jobs;
  m.Pb = blocking;
  m.S = std::min(instances, static_cast<double>(p.k));  // sum pi = 1 only to rounding
  m.Wq = waiting / (p.lambda * (1.0 - blocking));
  m.W = m.Wq + 1.0 / p.mu;
  return m;
}

}  // namespace vnfscale
