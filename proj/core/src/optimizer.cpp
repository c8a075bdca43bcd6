#include "vnfscale/optimizer.hpp"

#include <cmath>
#include <string>

#include "vnfscale/errors.hpp"
#include "vnfscale/parallel.hpp"
#include "vnfscale/solver.hpp"

namespace vnfscale {

namespace {

void require(bool ok, const std::string& detail) {
  if (!ok) throw ValidationError(Constraint::kCostSpec, detail);
}

bool has_weights(const CostSpec& spec) { return spec.w1.has_value() || spec.w2.has_value(); }

}  // namespace

void validate(const CostSpec& spec) {
  if (spec.w1) require(*spec.w1 >= 0.0 && std::isfinite(*spec.w1), "w1 >= 0");
  if (spec.w2) require(*spec.w2 >= 0.0 && std::isfinite(*spec.w2), "w2 >= 0");
  if (spec.delta) require(*spec.delta >= 0.0, "delta >= 0");
  if (spec.s_bar) require(*spec.s_bar > 0.0, "s_bar > 0");
  if (spec.wq_bar) require(*spec.wq_bar > 0.0, "wq_bar > 0");
  require(spec.wq_limit > 0.0, "wq_limit > 0");
  if (spec.delta && spec.w1 && spec.w2) {
    require(*spec.w1 > 0.0, "w1 > 0 when delta is given with weights");
    const double derived = *spec.w2 / *spec.w1;
    require(std::abs(derived - *spec.delta) <= 1e-12 * std::max(1.0, std::abs(derived)), "delta == w2/w1");
  }
}

double effective_delta(const CostSpec& spec) {
  if (spec.delta) return *spec.delta;
  require(spec.w1.has_value() && spec.w2.has_value(), "delta or both weights required");
  if (*spec.w1 == 0.0) return *spec.w2 > 0.0 ? kInfinity : 0.0;
  return *spec.w2 / *spec.w1;
}

double cost(const PerformanceMetrics& m, const LinearCost& w) {
  return w.Wq * m.Wq + w.S * m.S + w.Pb * m.Pb + w.L * m.L + w.W * m.W;
}

double cost(const PerformanceMetrics& m, const CostSpec& spec) {
  return cost(m, LinearCost::two_term(spec.w1.value_or(0.0), spec.w2.value_or(0.0)));
}

InstanceScan::InstanceScan(SystemParams base, unsigned threads) : base_(base), threads_(threads) {
  base_.k = 0;
  validate(base_);
  cache_.resize(static_cast<std::size_t>(max_k()) + 1);
}

const PerformanceMetrics& InstanceScan::at(int k) {
  if (k < 0 || k > max_k()) throw DomainError("k=" + std::to_string(k) + " outside 0..K-n0");
  auto& slot = cache_[static_cast<std::size_t>(k)];
  if (!slot) {
    SystemParams p = base_;
    p.k = k;
    slot = solve(p).metrics;
    ++solver_calls_;
  }
  return *slot;
}

std::vector<ScanRow> InstanceScan::table(const CostSpec* spec) {
  std::vector<int> missing;
  for (int k = 0; k <= max_k(); ++k) {
    if (!cache_[static_cast<std::size_t>(k)]) missing.push_back(k);
  }
  std::vector<PerformanceMetrics> solved(missing.size());
  parallel_for(missing.size(), threads_, [&](std::size_t n) {
    SystemParams p = base_;
    p.k = missing[n];
    solved[n] = solve(p).metrics;
  });
  for (std::size_t n = 0; n < missing.size(); ++n) cache_[static_cast<std::size_t>(missing[n])] = solved[n];
  solver_calls_ += static_cast<int>(missing.size());

  std::vector<ScanRow> rows;
  rows.reserve(cache_.size());
  const bool weighted = spec != nullptr && has_weights(*spec);
  for (int k = 0; k <= max_k(); ++k) {
    const PerformanceMetrics& m = *cache_[static_cast<std::size_t>(k)];
    rows.push_back(ScanRow{k, m, weighted ? cost(m, *spec) : std::nan("")});
  }
  return rows;
}

int select_k_algorithm1(InstanceScan& scan, double delta, double s_bar, double wq_bar) {
  if (!(delta >= 0.0)) throw ValidationError(Constraint::kCostSpec, "delta >= 0");
  if (!(s_bar > 0.0) || !(wq_bar > 0.0)) throw ValidationError(Constraint::kCostSpec, "s_bar > 0 and wq_bar > 0");
  for (int k = 0; k <= scan.max_k(); ++k) {
    const PerformanceMetrics& m = scan.at(k);
    const double s_norm = m.S / s_bar;
    const double wq_norm = m.Wq / wq_bar;
    const double ratio = wq_norm > 0.0 ? s_norm / wq_norm : kInfinity;
    if (!(ratio < delta)) return k;
  }
  return scan.max_k();
}

int select_k_algorithm1(InstanceScan& scan, const CostSpec& spec) {
  validate(spec);
  const double s_bar = spec.s_bar.value_or(static_cast<double>(scan.max_k() > 0 ? scan.max_k() : 1));
  if (!spec.wq_bar) throw ValidationError(Constraint::kCostSpec, "wq_bar required");
  return select_k_algorithm1(scan, effective_delta(spec), s_bar, *spec.wq_bar);
}

OptimizationResult argmin_k(InstanceScan& scan, const CostSpec& spec) {
  validate(spec);
  OptimizationResult out;
  CostSpec weighted = spec;
  if (!weighted.w1) weighted.w1 = 0.0;
  if (!weighted.w2) weighted.w2 = 0.0;
  out.scan = scan.table(&weighted);

  const ScanRow* best = nullptr;
  const ScanRow* fastest = &out.scan.front();
  for (const ScanRow& row : out.scan) {
    if (row.metrics.Wq < fastest->metrics.Wq) fastest = &row;
    const bool feasible = row.metrics.Wq >= 0.0 && row.metrics.Wq < spec.wq_limit;
    if (feasible && (best == nullptr || row.cost < best->cost)) best = &row;
  }
  out.feasible = best != nullptr;
  const ScanRow& pick = out.feasible ? *best : *fastest;
  out.k_op = pick.k;
  out.cost = pick.cost;
  out.metrics_at_k = pick.metrics;
  return out;
}

OptimizationResult optimize_algorithm1(InstanceScan& scan, const CostSpec& spec) {
  OptimizationResult out;
  out.k_op = select_k_algorithm1(scan, spec);
  out.scan = scan.table(&spec);
  const ScanRow& row = out.scan[static_cast<std::size_t>(out.k_op)];
  out.metrics_at_k = row.metrics;
  out.cost = row.cost;
  out.feasible = row.metrics.Wq < spec.wq_limit;
  return out;
}

}  // namespace vnfscale
