#pragma once

#include <nlohmann/json.hpp>

#include "vnfscale/metrics.hpp"
#include "vnfscale/optimizer.hpp"
#include "vnfscale/params.hpp"
#include "vnfscale/simulator.hpp"

namespace vnfscale {

// SystemParams <-> {"lambda","mu","alpha","n0","k","K"}. Reading rejects
// unknown fields and type mismatches with ValidationError; missing fields keep
// the value already in `into`, so a partial object overlays defaults.
nlohmann::json to_json(const SystemParams& p);
void overlay_params(const nlohmann::json& j, SystemParams& into);
SystemParams params_from_json(const nlohmann::json& j);  // all six fields required

// SimConfig fields: horizon, warmup, replications, seed, interarrival,
// service, setup (distribution strings such as "erlang:5"), threads.
void overlay_sim_config(const nlohmann::json& j, SimConfig& into);

// CostSpec fields: w1, w2, delta, s_bar, wq_bar, wq_limit.
void overlay_cost_spec(const nlohmann::json& j, CostSpec& into);

nlohmann::json to_json(const PerformanceMetrics& m);
nlohmann::json to_json(const SimulationResult& r);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const OptimizationResult& r);

}  // namespace vnfscale
