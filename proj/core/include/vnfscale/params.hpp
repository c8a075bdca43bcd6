#pragma once

namespace vnfscale {

// Configuration of the legacy block plus k threshold-scaled instances.
//
// The total server count N = n0 + k and the per-level server counts
// n_i = n0 + i are always derived; they are never stored. Instance i is
// powered up when the job count climbs to n_i and powered down when it
// falls back to n_{i-1}.
struct SystemParams {
  double lambda = 0.0;  // arrival rate, jobs/s
  double mu = 0.0;      // per-server service rate, jobs/s
  double alpha = 0.0;   // per-instance setup completion rate, 1/s
  int n0 = 0;           // always-on legacy servers
  int k = 0;            // dynamic instances
  int K = 0;            // system capacity (jobs)

  int total_servers() const noexcept { return n0 + k; }
  int servers_at_level(int level) const noexcept { return n0 + level; }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Throws ValidationError naming the first violated constraint.
void validate(const SystemParams& params);

// Built-in defaults of the numerical study: n0=110, mu=1, alpha=0.005, K=250.
SystemParams default_params();

}  // namespace vnfscale
