#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "vnfscale/errors.hpp"
#include "vnfscale/json_io.hpp"
#include "vnfscale/optimizer.hpp"
#include "vnfscale/parallel.hpp"
#include "vnfscale/simulator.hpp"
#include "vnfscale/solver.hpp"

namespace vnfscale::cli {

namespace {

using nlohmann::json;

// Raw command-line values. Anything unset falls back to the config file,
// then to built-in defaults.
struct ParamFlags {
  std::optional<double> lambda, mu, alpha;
  std::optional<int> n0, k, K;
};

struct SimFlags {
  std::optional<double> horizon, warmup;
  std::optional<int> replications;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> arrival, service, setup;
  bool strict = false;
};

struct CostFlags {
  std::optional<double> delta, s_bar, wq_bar, w1, w2, wq_limit;
};

struct SweepFlags {
  std::string param = "lambda";
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
  std::string series_param = "k";
  std::vector<double> series;
};

struct Common {
  std::string config_path;
  std::string format;
  std::string output_path;
  unsigned threads = 0;
  ParamFlags params;
};

void add_common(CLI::App& cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd.add_option("--config", c.config_path, "JSON config with 'params', 'sim', 'cost' sections");
  cmd.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("--output", c.output_path, "Write to this file instead of standard output");
  cmd.add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  cmd.add_option("--lambda", c.params.lambda, "Arrival rate (jobs/s)");
  cmd.add_option("--mu", c.params.mu, "Per-server service rate (jobs/s)");
  cmd.add_option("--alpha", c.params.alpha, "Setup completion rate (1/s)");
  cmd.add_option("--n0", c.params.n0, "Always-on legacy servers");
  cmd.add_option("--k", c.params.k, "Dynamic instances");
  cmd.add_option("--K", c.params.K, "System capacity (jobs)");
}

void add_sim(CLI::App& cmd, SimFlags& s) {
  cmd.add_option("--horizon", s.horizon, "Simulated seconds per replication");
  cmd.add_option("--warmup", s.warmup, "Discarded seconds (default 10% of horizon)");
  cmd.add_option("--replications", s.replications, "Independent replications");
  cmd.add_option("--seed", s.seed, "RNG seed");
  cmd.add_option("--arrival-dist", s.arrival, "Interarrival law, e.g. exponential");
  cmd.add_option("--service-dist", s.service, "Service law, e.g. erlang:5");
  cmd.add_option("--setup-dist", s.setup, "Setup law, e.g. deterministic");
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ValidationError(Constraint::kUnknownField, "cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError(Constraint::kUnknownField, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError(Constraint::kUnknownField, "config must be a JSON object");
  for (const auto& item : j.items()) {
    if (item.key() != "params" && item.key() != "sim" && item.key() != "cost") {
      throw ValidationError(Constraint::kUnknownField, "unknown config section '" + item.key() + "'");
    }
  }
  return j;
}

template <typename T>
void apply(const std::optional<T>& flag, T& target) {
  if (flag) target = *flag;
}

SystemParams resolve_params(const Common& c, const json& config) {
  SystemParams p = default_params();
  if (config.contains("params")) overlay_params(config["params"], p);
  apply(c.params.lambda, p.lambda);
  apply(c.params.mu, p.mu);
  apply(c.params.alpha, p.alpha);
  apply(c.params.n0, p.n0);
  apply(c.params.k, p.k);
  apply(c.params.K, p.K);
  return p;
}

SimConfig resolve_sim(const Common& c, const SimFlags& s, const json& config) {
  SimConfig sim;
  if (config.contains("sim")) overlay_sim_config(config["sim"], sim);
  apply(s.horizon, sim.horizon);
  if (s.warmup) sim.warmup = *s.warmup;
  apply(s.replications, sim.replications);
  apply(s.seed, sim.seed);
  if (s.arrival) sim.interarrival = parse_distribution(*s.arrival);
  if (s.service) sim.service = parse_distribution(*s.service);
  if (s.setup) sim.setup = parse_distribution(*s.setup);
  if (c.threads != 0) sim.threads = c.threads;
  validate(sim);
  return sim;
}

std::string params_csv_header() { return "lambda,mu,alpha,n0,k,K"; }

std::string params_csv(const SystemParams& p) {
  return format_number(p.lambda) + "," + format_number(p.mu) + "," + format_number(p.alpha) + "," +
         std::to_string(p.n0) + "," + std::to_string(p.k) + "," + std::to_string(p.K);
}

std::string metrics_csv(const PerformanceMetrics& m) {
  return format_number(m.L) + "," + format_number(m.W) + "," + format_number(m.Wq) + "," + format_number(m.Pb) + "," +
         format_number(m.S);
}

// Writes `text` to --output or the given stream.
void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output_path, std::ios::binary);
  if (!file) throw ValidationError(Constraint::kUnknownField, "cannot write '" + c.output_path + "'");
  file << text;
}

std::string run_solve(const Common& c) {
  const json config = load_config(c.config_path);
  const SystemParams p = resolve_params(c, config);
  const SolveReport report = solve(p);
  if (c.format == "csv") {
    return params_csv_header() + ",L,W,Wq,Pb,S\n" + params_csv(p) + "," + metrics_csv(report.metrics) + "\n";
  }
  return json{{"params", to_json(p)}, {"metrics", to_json(report.metrics)}}.dump(2) + "\n";
}

bool integral_param(const std::string& name) { return name == "k" || name == "K" || name == "n0"; }

void set_param(SystemParams& p, const std::string& name, double v) {
  if (name == "lambda") p.lambda = v;
  else if (name == "mu") p.mu = v;
  else if (name == "alpha") p.alpha = v;
  else if (name == "n0") p.n0 = static_cast<int>(std::lround(v));
  else if (name == "k") p.k = static_cast<int>(std::lround(v));
  else if (name == "K") p.K = static_cast<int>(std::lround(v));
  else throw ValidationError(Constraint::kSweepSpec, "unknown parameter '" + name + "'");
}

std::vector<double> sweep_grid(const SweepFlags& s) {
  auto fail = [](const std::string& why) { throw ValidationError(Constraint::kSweepSpec, why); };
  if (!(s.step > 0.0)) fail("step > 0");
  if (!(s.from <= s.to)) fail("from <= to");
  if (integral_param(s.param)) {
    for (double v : {s.from, s.to, s.step}) {
      if (v != std::floor(v)) fail(s.param + " sweeps need integer from/to/step");
    }
  }
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((s.to - s.from) / s.step + 1e-9)) + 1;
  for (std::size_t n = 0; n < count; ++n) grid.push_back(s.from + static_cast<double>(n) * s.step);
  return grid;
}

std::string run_sweep(const Common& c, const SweepFlags& s) {
  const json config = load_config(c.config_path);
  const SystemParams base = resolve_params(c, config);
  {
    SystemParams probe = base;  // rejects unknown names up front
    set_param(probe, s.param, 0.0);
    if (!s.series.empty()) set_param(probe, s.series_param, 0.0);
  }
  const std::vector<double> grid = sweep_grid(s);

  struct Point {
    std::string series;
    double value;
    SystemParams params;
  };
  std::vector<Point> points;
  auto add_series = [&](const std::string& id, const SystemParams& series_base) {
    for (double v : grid) {
      SystemParams p = series_base;
      set_param(p, s.param, v);
      points.push_back(Point{id, v, p});
    }
  };
  if (s.series.empty()) {
    add_series("base", base);
  } else {
    if (integral_param(s.series_param)) {
      for (double v : s.series) {
        if (v != std::floor(v)) throw ValidationError(Constraint::kSweepSpec, s.series_param + " series values must be integers");
      }
    }
    for (double v : s.series) {
      SystemParams p = base;
      set_param(p, s.series_param, v);
      add_series(s.series_param + "=" + format_number(v), p);
    }
  }
  for (const Point& pt : points) {
    try {
      validate(pt.params);
    } catch (const ValidationError& e) {
      throw ValidationError(e.constraint(), "at " + pt.series + ", " + s.param + "=" + format_number(pt.value) + ": " + e.what());
    }
  }

  std::vector<PerformanceMetrics> metrics(points.size());
  parallel_for(points.size(), c.threads, [&](std::size_t n) { metrics[n] = solve(points[n].params).metrics; });

  std::string text = "series,param,value,L,W,Wq,Pb,S\n";
  for (std::size_t n = 0; n < points.size(); ++n) {
    text += points[n].series + "," + s.param + "," + format_number(points[n].value) + "," + metrics_csv(metrics[n]) + "\n";
  }
  return text;
}

std::string run_optimize(const Common& c, const CostFlags& f) {
  const json config = load_config(c.config_path);
  const SystemParams base = resolve_params(c, config);
  CostSpec spec;
  if (config.contains("cost")) overlay_cost_spec(config["cost"], spec);
  if (f.delta) spec.delta = f.delta;
  if (f.s_bar) spec.s_bar = f.s_bar;
  if (f.wq_bar) spec.wq_bar = f.wq_bar;
  if (f.w1) spec.w1 = f.w1;
  if (f.w2) spec.w2 = f.w2;
  apply(f.wq_limit, spec.wq_limit);

  const bool ratio_mode = spec.delta || spec.s_bar || spec.wq_bar;
  const bool argmin_mode = spec.w1 || spec.w2 || spec.wq_limit != kInfinity;
  if (ratio_mode == argmin_mode) {
    throw ValidationError(Constraint::kCostSpec,
                          "give exactly one of {--delta, --s-bar, --wq-bar} or {--w1, --w2, --wq-limit}");
  }
  if (ratio_mode && !spec.delta) throw ValidationError(Constraint::kCostSpec, "--delta required");
  if (ratio_mode && !spec.wq_bar) throw ValidationError(Constraint::kCostSpec, "--wq-bar required");
  validate(spec);

  InstanceScan scan(base, c.threads);
  const OptimizationResult result = ratio_mode ? optimize_algorithm1(scan, spec) : argmin_k(scan, spec);
  const std::string mode = ratio_mode ? "threshold-ratio" : "argmin";

  if (c.format == "csv") {
    std::string text = "# mode=" + mode + " k_op=" + std::to_string(result.k_op) +
                       " feasible=" + (result.feasible ? "true" : "false") + "\nk,Wq,S,C\n";
    for (const ScanRow& row : result.scan) {
      text += std::to_string(row.k) + "," + format_number(row.metrics.Wq) + "," + format_number(row.metrics.S) + "," +
              (std::isnan(row.cost) ? std::string() : format_number(row.cost)) + "\n";
    }
    return text;
  }
  json j = to_json(result);
  j["mode"] = mode;
  j["base"] = to_json(scan.base());
  j["base"].erase("k");
  return j.dump(2) + "\n";
}

std::string estimates_csv(const SimulationResult& r) {
  std::string text = "metric,mean,half_width\n";
  for (auto [name, e] : {std::pair{"Wq", r.Wq}, std::pair{"S", r.S}, std::pair{"Pb", r.Pb}, std::pair{"L", r.L},
                         std::pair{"W", r.W}}) {
    text += std::string(name) + "," + format_number(e.mean) + "," + format_number(e.half_width) + "\n";
  }
  return text;
}

std::string run_simulate(const Common& c, const SimFlags& s) {
  const json config = load_config(c.config_path);
  const SystemParams p = resolve_params(c, config);
  const SimConfig sim = resolve_sim(c, s, config);
  const SimulationResult r = simulate(p, sim);
  if (c.format == "csv") return estimates_csv(r);
  return to_json(r).dump(2) + "\n";
}

std::string run_compare(const Common& c, const SimFlags& s, bool& all_covered) {
  const json config = load_config(c.config_path);
  const SystemParams p = resolve_params(c, config);
  const SimConfig sim = resolve_sim(c, s, config);
  const SolveReport analytical = solve(p);
  const ComparisonReport report = compare(analytical, simulate(p, sim));
  all_covered = report.all_covered();
  if (c.format == "csv") {
    std::string text = "metric,analytical,simulated,half_width,covered,relative_gap\n";
    for (const auto& row : report.rows) {
      text += row.metric + "," + format_number(row.analytical) + "," + format_number(row.simulated) + "," +
              format_number(row.half_width) + "," + (row.covered ? "true" : "false") + "," +
              format_number(row.relative_gap) + "\n";
    }
    return text;
  }
  json j = to_json(report);
  j["params"] = to_json(p);
  return j.dump(2) + "\n";
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity planning for a legacy server block plus auto-scaled instances with setup delay", "vnfscale"};
  app.require_subcommand(1);

  Common common;
  SimFlags sim_flags;
  CostFlags cost_flags;
  SweepFlags sweep_flags;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Stationary metrics for one configuration");
  add_common(*solve_cmd, common, "json");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Metrics over a one-parameter grid (CSV)");
  add_common(*sweep_cmd, common, "csv");
  sweep_cmd->add_option("--param", sweep_flags.param, "Swept parameter")
      ->check(CLI::IsMember({"lambda", "mu", "alpha", "n0", "k", "K"}));
  sweep_cmd->add_option("--from", sweep_flags.from, "First grid value")->required();
  sweep_cmd->add_option("--to", sweep_flags.to, "Last grid value")->required();
  sweep_cmd->add_option("--step", sweep_flags.step, "Grid step");
  sweep_cmd->add_option("--series-param", sweep_flags.series_param, "Parameter varied across series")
      ->check(CLI::IsMember({"lambda", "mu", "alpha", "n0", "k", "K"}));
  sweep_cmd->add_option("--series", sweep_flags.series, "Series values, e.g. --series 10,30,60")->delimiter(',');

  CLI::App* optimize_cmd = app.add_subcommand("optimize", "Choose the number of dynamic instances");
  add_common(*optimize_cmd, common, "json");
  optimize_cmd->add_option("--delta", cost_flags.delta, "Threshold-ratio mode: w2/w1");
  optimize_cmd->add_option("--s-bar", cost_flags.s_bar, "Threshold-ratio mode: S normalizer (default K-n0)");
  optimize_cmd->add_option("--wq-bar", cost_flags.wq_bar, "Threshold-ratio mode: Wq normalizer (s)");
  optimize_cmd->add_option("--w1", cost_flags.w1, "Argmin mode: weight on Wq");
  optimize_cmd->add_option("--w2", cost_flags.w2, "Argmin mode: weight on S");
  optimize_cmd->add_option("--wq-limit", cost_flags.wq_limit, "Argmin mode: SLA bound on Wq (s)");

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Discrete-event simulation with confidence intervals");
  add_common(*simulate_cmd, common, "json");
  add_sim(*simulate_cmd, sim_flags);

  CLI::App* compare_cmd = app.add_subcommand("compare", "Solver versus simulation coverage table");
  add_common(*compare_cmd, common, "json");
  add_sim(*compare_cmd, sim_flags);
  compare_cmd->add_flag("--strict", sim_flags.strict, "Exit 3 unless every metric is covered");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (solve_cmd->parsed()) {
      emit(common, run_solve(common), out);
    } else if (sweep_cmd->parsed()) {
      emit(common, run_sweep(common, sweep_flags), out);
    } else if (optimize_cmd->parsed()) {
      emit(common, run_optimize(common, cost_flags), out);
    } else if (simulate_cmd->parsed()) {
      emit(common, run_simulate(common, sim_flags), out);
    } else if (compare_cmd->parsed()) {
      bool covered = true;
      emit(common, run_compare(common, sim_flags, covered), out);
      if (sim_flags.strict && !covered) {
        err << "coverage check failed\n";
        return kExitCoverage;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace vnfscale::cli
