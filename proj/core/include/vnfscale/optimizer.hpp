#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "vnfscale/metrics.hpp"
#include "vnfscale/params.hpp"

namespace vnfscale {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Weights and normalizers for choosing k.
//
// The two-term cost is C = w1*Wq + w2*S. The threshold-ratio selector only
// needs delta = w2/w1 together with the normalizers s_bar and wq_bar. When
// delta is absent it is derived from the weights (w1 == 0 maps to +inf).
struct CostSpec {
  std::optional<double> w1;
  std::optional<double> w2;
  std::optional<double> delta;
  std::optional<double> s_bar;
  std::optional<double> wq_bar;
  double wq_limit = kInfinity;  // SLA bound on Wq
};

// Throws ValidationError on negative weights, non-positive normalizers or
// limit, or a delta inconsistent with w2/w1 beyond 1e-12 relative.
void validate(const CostSpec& spec);

// delta if given, otherwise w2/w1. Throws ValidationError if neither is available.
double effective_delta(const CostSpec& spec);

// Linear cost over every computed metric. The default-constructed weights
// are all zero; `two_term` builds w1*Wq + w2*S.
struct LinearCost {
  double Wq = 0.0;
  double S = 0.0;
  double Pb = 0.0;
  double L = 0.0;
  double W = 0.0;

  static LinearCost two_term(double w1, double w2) { return LinearCost{.Wq = w1, .S = w2}; }
};

double cost(const PerformanceMetrics& m, const LinearCost& weights);

// w1*Wq + w2*S; missing weights count as zero.
double cost(const PerformanceMetrics& m, const CostSpec& spec);

struct ScanRow {
  int k = 0;
  PerformanceMetrics metrics;
  double cost = 0.0;  // NaN when the spec carries no weights
};

// Lazily solved metrics for k = 0..K-n0 with everything else fixed. Not
// thread-safe; a single instance belongs to one caller.
class InstanceScan {
 public:
  // `base.k` is ignored. Throws ValidationError if base with k = 0 is invalid.
  explicit InstanceScan(SystemParams base, unsigned threads = 0);

  const SystemParams& base() const noexcept { return base_; }
  int max_k() const noexcept { return base_.K - base_.n0; }

  const PerformanceMetrics& at(int k);

  // Solves every k not yet cached, concurrently; rows in k order.
  std::vector<ScanRow> table(const CostSpec* spec = nullptr);

  int solver_calls() const noexcept { return solver_calls_; }

 private:
  SystemParams base_;
  unsigned threads_;
  std::vector<std::optional<PerformanceMetrics>> cache_;
  int solver_calls_ = 0;
};

// Threshold-ratio selection: starting at k = 0, keep adding an instance while
// (S/s_bar) / (Wq/wq_bar) < delta; return the first k that fails the test,
// or K - n0 if none does. Wq == 0 counts as an infinite ratio.
int select_k_algorithm1(InstanceScan& scan, double delta, double s_bar, double wq_bar);
int select_k_algorithm1(InstanceScan& scan, const CostSpec& spec);

struct OptimizationResult {
  int k_op = 0;
  double cost = 0.0;
  PerformanceMetrics metrics_at_k;
  bool feasible = false;
  std::vector<ScanRow> scan;
};

// Exhaustive minimization of w1*Wq + w2*S over k = 0..K-n0 subject to
// Wq < wq_limit (Wq == 0 is admitted). Ties go to the smallest k. With no
// feasible k, returns the k of smallest Wq and feasible = false.
OptimizationResult argmin_k(InstanceScan& scan, const CostSpec& spec);

// Threshold-ratio selection packaged with its metrics and the full scan table.
OptimizationResult optimize_algorithm1(InstanceScan& scan, const CostSpec& spec);

}  // namespace vnfscale
