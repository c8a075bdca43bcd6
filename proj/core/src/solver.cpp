#include "vnfscale/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vnfscale/errors.hpp"
#include "vnfscale/generator.hpp"

namespace vnfscale {

namespace {

constexpr double kBoundSlack = 1e-12;

void count(OpCounter* counter, std::uint64_t n) {
  if (counter != nullptr) counter->add(n);
}

double checked_denominator(double d, int level, int jobs) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw NumericalFault("non-positive recursion denominator at level " + std::to_string(level) + ", j=" +
                         std::to_string(jobs));
  }
  return d;
}

// Invoked when a forward pass exceeds kRescaleThreshold; scales everything
// computed so far by kRescaleFactor. Null means rescaling is not allowed.
struct Rescaler {
  std::span<double> computed;  // every mass written so far, including the current level prefix
  int* events = nullptr;
};

// Backward passes are written in terms of q_j, the probability that the
// level segment started at j is left through a setup completion before it
// drops to j-1. Then D_j = s_j*alpha + c + lambda*q_{j+1}, b_j = lambda/D_j and
// q_j = (s_j*alpha + lambda*q_{j+1})/D_j, all without subtraction. The naive
// form D_j = lambda + s_j*alpha + c - c*b_{j+1} amplifies rounding by lambda/c
// per step once lambda exceeds the service capacity of the level.

// Backward pass for level 0: b_j for j = 1..K.
RecursionCoefficients level0_coefficients(const StateSpace& space, OpCounter* counter) {
  const SystemParams& p = space.params();
  RecursionCoefficients c;
  c.level = 0;
  c.first_jobs = 1;
  c.a.assign(static_cast<std::size_t>(p.K), 0.0);
  c.b.assign(static_cast<std::size_t>(p.K), 0.0);
  auto b = [&](int j) -> double& { return c.b[static_cast<std::size_t>(j - 1)]; };

  const int busy_limit = std::min(p.n0, p.K);
  for (int j = 1; j <= busy_limit; ++j) b(j) = p.lambda / (j * p.mu);
  count(counter, 2ull * static_cast<std::uint64_t>(busy_limit));

  if (p.K > p.n0) {
    const double serve = p.n0 * p.mu;
    double q = 0.0;  // q_{K+1}: no arrivals leave state K
    for (int j = p.K; j > p.n0; --j) {
      const double setup_rate = space.setup_count_unchecked(0, j) * p.alpha;
      const double up = j < p.K ? p.lambda * q : 0.0;
      const double d = checked_denominator(setup_rate + serve + up, 0, j);
      b(j) = p.lambda / d;
      q = (setup_rate + up) / d;
    }
    count(counter, 8ull * static_cast<std::uint64_t>(p.K - p.n0));
  }
  return c;
}

// Backward pass for level >= 1. Interior and top levels share one form: at
// the top level setup_count(k, j) == 0 and the inflow from level k-1 carries
// exactly one setup (N - n_{k-1} == 1).
RecursionCoefficients level_coefficients(const StateSpace& space, int level, std::span<const double> previous,
                                         OpCounter* counter) {
  const SystemParams& p = space.params();
  const int n_i = p.n0 + level;
  const int prev_first = space.first_jobs(level - 1);
  const double serve = n_i * p.mu;

  RecursionCoefficients c;
  c.level = level;
  c.first_jobs = n_i + 1;
  const int count_j = p.K - n_i;
  if (count_j <= 0) return c;
  c.a.assign(static_cast<std::size_t>(count_j), 0.0);
  c.b.assign(static_cast<std::size_t>(count_j), 0.0);

  auto idx = [&](int j) { return static_cast<std::size_t>(j - c.first_jobs); };
  auto inflow = [&](int j) {
    return space.setup_count_unchecked(level - 1, j) * p.alpha * previous[static_cast<std::size_t>(j - prev_first)];
  };

  double q = 0.0;
  double a_next = 0.0;
  for (int j = p.K; j > n_i; --j) {
    const double setup_rate = space.setup_count_unchecked(level, j) * p.alpha;
    const double up = j < p.K ? p.lambda * q : 0.0;
    const double d = checked_denominator(setup_rate + serve + up, level, j);
    a_next = (serve * a_next + inflow(j)) / d;
    c.a[idx(j)] = a_next;
    c.b[idx(j)] = p.lambda / d;
    q = (setup_rate + up) / d;
  }
  count(counter, 14ull * static_cast<std::uint64_t>(count_j));
  return c;
}

// pi(i,j) = a_j + b_j pi(i,j-1) over `masses`, whose first entry is already set.
void forward_pass(const RecursionCoefficients& c, int level_first, std::span<double> masses, Rescaler* rescaler,
                  OpCounter* counter) {
  if (c.empty()) return;
  // mutable copy of a so that a rescale can be applied to the part not yet consumed
  std::vector<double> a = c.a;
  const std::size_t shift = static_cast<std::size_t>(c.first_jobs - level_first);
  for (std::size_t n = 0; n < c.b.size(); ++n) {
    const std::size_t pos = n + shift;
    double value = a[n] + c.b[n] * masses[pos - 1];
    if (value > kRescaleThreshold) {
      if (rescaler == nullptr) {
        if (!std::isfinite(value)) throw NumericalFault("unnormalized mass overflow at level " + std::to_string(c.level));
      } else {
        const std::size_t written = static_cast<std::size_t>(masses.data() - rescaler->computed.data()) + pos;
        for (std::size_t m = 0; m < written; ++m) rescaler->computed[m] *= kRescaleFactor;
        for (std::size_t m = n; m < a.size(); ++m) a[m] *= kRescaleFactor;
        value *= kRescaleFactor;
        ++*rescaler->events;
        count(counter, written + (a.size() - n));
      }
    }
    masses[pos] = value;
  }
  count(counter, 2ull * c.b.size());
}

void fill_level0(const RecursionCoefficients& c, std::span<double> masses, Rescaler* rescaler,
                 OpCounter* counter) {
  masses[0] = 1.0;
  forward_pass(c, 0, masses, rescaler, counter);
}

}  // namespace

LevelSolution solve_level0(const StateSpace& space, OpCounter* counter) {
  LevelSolution out;
  out.coefficients = level0_coefficients(space, counter);
  check_coefficient_bounds(space, out.coefficients);
  out.masses.assign(space.level_size(0), 0.0);
  fill_level0(out.coefficients, out.masses, nullptr, counter);
  return out;
}

double boundary_mass(const StateSpace& space, int level, std::span<const double> level_masses, OpCounter* counter) {
  const SystemParams& p = space.params();
  const int first = space.first_jobs(level);
  double flow = 0.0;
  for (int j = p.n0 + level + 1; j <= p.K; ++j) {
    flow += space.setup_count_unchecked(level, j) * level_masses[static_cast<std::size_t>(j - first)];
  }
  count(counter, 2ull * static_cast<std::uint64_t>(std::max(0, p.K - p.n0 - level)) + 3);
  return flow * p.alpha / ((p.n0 + level + 1) * p.mu);
}

LevelSolution solve_level(const StateSpace& space, int level, std::span<const double> previous_masses,
                          double boundary, OpCounter* counter) {
  if (level < 1 || level > space.params().k) throw DomainError("solve_level expects 1 <= level <= k");
  LevelSolution out;
  out.coefficients = level_coefficients(space, level, previous_masses, counter);
  check_coefficient_bounds(space, out.coefficients);
  out.masses.assign(space.level_size(level), 0.0);
  out.masses[0] = boundary;
  forward_pass(out.coefficients, space.first_jobs(level), out.masses, nullptr, counter);
  return out;
}

void check_coefficient_bounds(const StateSpace& space, const RecursionCoefficients& c) {
  const SystemParams& p = space.params();
  const int n_i = p.n0 + c.level;
  for (std::size_t n = 0; n < c.b.size(); ++n) {
    const int j = c.first_jobs + static_cast<int>(n);
    const double b = c.b[n];
    const double a = c.a[n];
    auto fail = [&](const char* what) {
      throw NumericalFault(std::string(what) + " at level " + std::to_string(c.level) + ", j=" + std::to_string(j));
    };
    if (!(b > 0.0) || !std::isfinite(b)) fail("non-positive b coefficient");
    if (c.level >= 1 && (!(a >= 0.0) || !std::isfinite(a))) fail("negative a coefficient");
    if (c.level == 0 && j <= p.n0) continue;
    const double bound = p.lambda / (n_i * p.mu + space.setup_count_unchecked(c.level, j) * p.alpha);
    if (b > bound * (1.0 + kBoundSlack)) fail("b coefficient above its bound");
  }
}

SolveReport solve(const SystemParams& params) {
  const StateSpace space(params);
  const SystemParams& p = space.params();
  OpCounter counter;
  int rescale_events = 0;

  std::vector<double> pi(space.total_states(), 0.0);
  const std::span<double> all(pi);
  Rescaler rescaler{all, &rescale_events};

  {
    const RecursionCoefficients c = level0_coefficients(space, &counter);
    check_coefficient_bounds(space, c);
    fill_level0(c, all.subspan(0, space.level_size(0)), &rescaler, &counter);
  }

  for (int level = 1; level <= p.k; ++level) {
    const auto previous = std::span<const double>(all.subspan(space.level_offset(level - 1), space.level_size(level - 1)));
    double boundary = boundary_mass(space, level - 1, previous, &counter);
    if (boundary > kRescaleThreshold) {
      const std::size_t written = space.level_offset(level);
      for (std::size_t m = 0; m < written; ++m) pi[m] *= kRescaleFactor;
      boundary *= kRescaleFactor;
      ++rescale_events;
      counter.add(written);
    }
    const RecursionCoefficients c = level_coefficients(space, level, previous, &counter);
    check_coefficient_bounds(space, c);
    auto masses = all.subspan(space.level_offset(level), space.level_size(level));
    masses[0] = boundary;
    forward_pass(c, space.first_jobs(level), masses, &rescaler, &counter);
  }

  double total = 0.0;
  for (double v : pi) total += v;
  if (!(total > 0.0) || !std::isfinite(total)) throw NumericalFault("total unnormalized mass is not finite and positive");
  const double inv = 1.0 / total;
  for (double& v : pi) v *= inv;
  counter.add(2ull * pi.size());

  SolveReport report{StationaryDistribution(space, std::move(pi)), {}, rescale_events, 0.0, counter.ops};
  report.metrics = compute_metrics(report.distribution);
  report.max_balance_residual = max_balance_residual(report.distribution);
  return report;
}

double max_balance_residual(const StationaryDistribution& distribution) {
  const StateSpace& space = distribution.state_space();
  const auto pi = distribution.values();
  std::vector<double> inflow(pi.size(), 0.0);
  std::vector<double> outflow(pi.size(), 0.0);
  for_each_transition(space, [&](std::size_t from, std::size_t to, double rate, TransitionKind) {
    outflow[from] += rate * pi[from];
    inflow[to] += rate * pi[from];
  });
  double worst = 0.0;
  for (std::size_t s = 0; s < pi.size(); ++s) {
    if (pi[s] < 1e-290) continue;
    worst = std::max(worst, std::abs(inflow[s] - outflow[s]) / outflow[s]);
  }
  return worst;
}

}  // namespace vnfscale
