#include "vnfscale/json_io.hpp"

#include <cmath>
#include <set>
#include <string>

#include "vnfscale/errors.hpp"

namespace vnfscale {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const char* what) {
  if (!j.is_object()) throw ValidationError(Constraint::kUnknownField, std::string(what) + " must be an object");
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) {
      throw ValidationError(Constraint::kUnknownField, std::string("unknown ") + what + " field '" + item.key() + "'");
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw ValidationError(Constraint::kUnknownField, std::string(key) + " must be an integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) throw ValidationError(Constraint::kUnknownField, std::string(key) + " must be a number");
    }
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(Constraint::kUnknownField, std::string(key) + ": " + e.what());
  }
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  T value{};
  read(j, key, value);
  out = value;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json estimate_json(const Estimate& e) {
  return json{{"mean", number_or_null(e.mean)}, {"half_width", number_or_null(e.half_width)}};
}

}  // namespace

json to_json(const SystemParams& p) {
  return json{{"lambda", p.lambda}, {"mu", p.mu}, {"alpha", p.alpha}, {"n0", p.n0}, {"k", p.k}, {"K", p.K}};
}

void overlay_params(const json& j, SystemParams& into) {
  reject_unknown(j, {"lambda", "mu", "alpha", "n0", "k", "K"}, "params");
  read(j, "lambda", into.lambda);
  read(j, "mu", into.mu);
  read(j, "alpha", into.alpha);
  read(j, "n0", into.n0);
  read(j, "k", into.k);
  read(j, "K", into.K);
}

SystemParams params_from_json(const json& j) {
  reject_unknown(j, {"lambda", "mu", "alpha", "n0", "k", "K"}, "params");
  for (const char* key : {"lambda", "mu", "alpha", "n0", "k", "K"}) {
    if (!j.contains(key)) throw ValidationError(Constraint::kUnknownField, std::string("missing params field '") + key + "'");
  }
  SystemParams p;
  overlay_params(j, p);
  return p;
}

void overlay_sim_config(const json& j, SimConfig& into) {
  reject_unknown(j, {"horizon", "warmup", "replications", "seed", "interarrival", "service", "setup", "threads"}, "sim");
  read(j, "horizon", into.horizon);
  read_optional(j, "warmup", into.warmup);
  read(j, "replications", into.replications);
  read(j, "seed", into.seed);
  read(j, "threads", into.threads);
  for (auto [key, target] : {std::pair{"interarrival", &into.interarrival}, std::pair{"service", &into.service},
                             std::pair{"setup", &into.setup}}) {
    std::string text;
    if (j.contains(key)) {
      read(j, key, text);
      *target = parse_distribution(text);
    }
  }
}

void overlay_cost_spec(const json& j, CostSpec& into) {
  reject_unknown(j, {"w1", "w2", "delta", "s_bar", "wq_bar", "wq_limit"}, "cost");
  read_optional(j, "w1", into.w1);
  read_optional(j, "w2", into.w2);
  read_optional(j, "delta", into.delta);
  read_optional(j, "s_bar", into.s_bar);
  read_optional(j, "wq_bar", into.wq_bar);
  read(j, "wq_limit", into.wq_limit);
}

json to_json(const PerformanceMetrics& m) {
  return json{{"L", m.L}, {"W", m.W}, {"Wq", m.Wq}, {"Pb", m.Pb}, {"S", m.S}};
}

json to_json(const SimulationResult& r) {
  json reps = json::array();
  for (const auto& rep : r.replications) {
    reps.push_back(json{{"L", rep.L()}, {"W", rep.W()}, {"Wq", rep.Wq()}, {"Pb", rep.Pb()}, {"S", rep.S()},
                        {"accepted", rep.accepted}, {"blocked", rep.blocked}});
  }
  return json{{"params", to_json(r.params)},
              {"horizon", r.config.horizon},
              {"warmup", r.config.effective_warmup()},
              {"replications", r.config.replications},
              {"seed", r.config.seed},
              {"interarrival", to_string(r.config.interarrival)},
              {"service", to_string(r.config.service)},
              {"setup", to_string(r.config.setup)},
              {"estimates",
               {{"L", estimate_json(r.L)},
                {"W", estimate_json(r.W)},
                {"Wq", estimate_json(r.Wq)},
                {"Pb", estimate_json(r.Pb)},
                {"S", estimate_json(r.S)}}},
              {"accepted_jobs", r.accepted_jobs},
              {"blocked_jobs", r.blocked_jobs},
              {"per_replication", reps}};
}

json to_json(const ComparisonReport& r) {
  json rows = json::array();
  for (const auto& m : r.rows) {
    rows.push_back(json{{"metric", m.metric},
                        {"analytical", m.analytical},
                        {"simulated", m.simulated},
                        {"half_width", number_or_null(m.half_width)},
                        {"covered", m.covered},
                        {"absolute_gap", m.absolute_gap},
                        {"relative_gap", number_or_null(m.relative_gap)}});
  }
  return json{{"rows", rows}, {"all_covered", r.all_covered()}};
}

json to_json(const OptimizationResult& r) {
  json scan = json::array();
  for (const auto& row : r.scan) {
    scan.push_back(json{{"k", row.k}, {"Wq", row.metrics.Wq}, {"S", row.metrics.S}, {"C", number_or_null(row.cost)}});
  }
  return json{{"k_op", r.k_op},
              {"cost", number_or_null(r.cost)},
              {"feasible", r.feasible},
              {"metrics", to_json(r.metrics_at_k)},
              {"scan", scan}};
}

}  // namespace vnfscale
