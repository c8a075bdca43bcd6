#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vnfscale/metrics.hpp"
#include "vnfscale/stationary.hpp"

namespace vnfscale {

// Coefficients of pi(i,j) = a_j + b_j * pi(i,j-1) for one level, indexed by
// job count j in [first_jobs, K]. Level 0 has a == 0 and starts at j = 1;
// level i >= 1 starts at j = n_i + 1 (possibly an empty range).
struct RecursionCoefficients {
  int level = 0;
  int first_jobs = 0;
  std::vector<double> a;
  std::vector<double> b;

  bool empty() const noexcept { return b.empty(); }
  double a_at(int jobs) const { return a[static_cast<std::size_t>(jobs - first_jobs)]; }
  double b_at(int jobs) const { return b[static_cast<std::size_t>(jobs - first_jobs)]; }
};

// Counts floating-point operations spent by the recursion.
struct OpCounter {
  std::uint64_t ops = 0;
  void add(std::uint64_t n) noexcept { ops += n; }
};

struct LevelSolution {
  RecursionCoefficients coefficients;
  std::vector<double> masses;  // unnormalized, jobs first_jobs(level)..K
};

// Level 0 with pi(0,0) = 1. b_j = lambda/(j mu) up to n0; above n0 the
// backward recursion from b_K = lambda/(n0 mu + (N-n0) alpha).
LevelSolution solve_level0(const StateSpace& space, OpCounter* counter = nullptr);

// Unnormalized pi(level+1, n_{level+1}) from the cut between levels <= level
// and the rest: n_{i+1} mu pi(i+1,n_{i+1}) = sum_j setup_count(i,j) alpha pi(i,j).
// `level_masses` covers jobs first_jobs(level)..K.
double boundary_mass(const StateSpace& space, int level, std::span<const double> level_masses,
                     OpCounter* counter = nullptr);

// Level i >= 1 given the full previous level and pi(i, n_i). Interior levels
// carry a setup term; the top level has none. Throws NumericalFault if a
// denominator is non-positive or a coefficient leaves its bound.
LevelSolution solve_level(const StateSpace& space, int level, std::span<const double> previous_masses,
                          double boundary, OpCounter* counter = nullptr);

// Throws NumericalFault unless every coefficient is positive and each b
// respects its upper bound (within 1e-12 relative slack):
//   level 0, j > n0 and interior levels: b_j <= lambda / (n_i mu + setup(i,j) alpha)
//   top level:                           b_j <= lambda / (n_k mu)
void check_coefficient_bounds(const StateSpace& space, const RecursionCoefficients& coefficients);

struct SolveReport {
  StationaryDistribution distribution;
  PerformanceMetrics metrics;
  int rescale_events = 0;
  double max_balance_residual = 0.0;
  std::uint64_t arithmetic_ops = 0;
};

// Full recursion, normalization and metrics. Arithmetic work is linear in
// the number of states.
SolveReport solve(const SystemParams& params);

// Masses above this are rescaled by kRescaleFactor during the recursion.
inline constexpr double kRescaleThreshold = 1e250;
inline constexpr double kRescaleFactor = 1e-250;

// Worst |inflow - outflow| / outflow over all states. States whose
// probability is below 1e-290 are skipped (no relative precision left).
double max_balance_residual(const StationaryDistribution& distribution);

}  // namespace vnfscale
