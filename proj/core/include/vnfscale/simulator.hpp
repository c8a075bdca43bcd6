#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vnfscale/params.hpp"
#include "vnfscale/sim_distribution.hpp"
#include "vnfscale/solver.hpp"

namespace vnfscale {

struct SimConfig {
  double horizon = 3e5;          // simulated seconds per replication
  std::optional<double> warmup;  // discarded prefix; 10% of horizon when unset
  int replications = 30;
  std::uint64_t seed = 1;
  DistributionSpec interarrival;  // mean 1/lambda unless overridden
  DistributionSpec service;       // mean 1/mu unless overridden
  DistributionSpec setup;         // mean 1/alpha unless overridden
  unsigned threads = 0;           // 0 = hardware concurrency
  bool check_invariants = false;  // verify the state rules after every event

  double effective_warmup() const { return warmup.value_or(0.1 * horizon); }
  bool all_exponential() const;
};

// Throws ValidationError.
void validate(const SimConfig& config);

// Raw bookkeeping and estimates of a single replication. Counters cover
// arrivals at or after the warmup; time integrals cover [warmup, horizon].
struct ReplicationStats {
  std::uint64_t accepted = 0;
  std::uint64_t blocked = 0;
  std::uint64_t waits_recorded = 0;  // accepted jobs that started service
  std::uint64_t sojourns_recorded = 0;  // accepted jobs that departed
  double total_wait = 0.0;
  double total_sojourn = 0.0;
  double area_jobs = 0.0;
  double area_instances = 0.0;
  double observed_time = 0.0;
  std::uint64_t events = 0;

  double L() const { return area_jobs / observed_time; }
  double S() const { return area_instances / observed_time; }
  double Pb() const;
  double Wq() const { return waits_recorded ? total_wait / static_cast<double>(waits_recorded) : 0.0; }
  double W() const { return sojourns_recorded ? total_sojourn / static_cast<double>(sojourns_recorded) : 0.0; }
};

struct Estimate {
  double mean = 0.0;
  double half_width = 0.0;  // 95% Student-t over replications; +inf with one replication
};

struct SimulationResult {
  SystemParams params;
  SimConfig config;
  Estimate Wq, S, Pb, L, W;
  std::uint64_t accepted_jobs = 0;
  std::uint64_t blocked_jobs = 0;
  std::vector<ReplicationStats> replications;
};

// One replication. The substream is a pure function of (seed, index), so
// the result does not depend on which thread runs it. Exponential
// configurations use a rate-race event loop; anything else uses an event
// calendar with per-job service and per-instance setup clocks.
ReplicationStats simulate_once(const SystemParams& params, const SimConfig& config, int replication_index);

// All replications plus pooled point estimates: Pb = blocked/(accepted+blocked),
// L and S are pooled time averages, Wq and W pooled per-job means.
SimulationResult simulate(const SystemParams& params, const SimConfig& config);

struct MetricComparison {
  std::string metric;
  double analytical = 0.0;
  double simulated = 0.0;
  double half_width = 0.0;
  bool covered = false;
  double absolute_gap = 0.0;
  double relative_gap = 0.0;  // absolute_gap / |analytical|; 0 when both are 0
};

struct ComparisonReport {
  std::vector<MetricComparison> rows;  // Wq, S, Pb, L, W
  bool all_covered() const;
  const MetricComparison& row(const std::string& metric) const;
};

// Coverage: |analytical - simulated| <= half_width + kCoverageFloor.
inline constexpr double kCoverageFloor = 1e-9;

// Throws MismatchError if the two sides were computed on different
// parameters or the simulation used non-exponential distributions.
ComparisonReport compare(const SolveReport& analytical, const SimulationResult& simulated);

}  // namespace vnfscale
