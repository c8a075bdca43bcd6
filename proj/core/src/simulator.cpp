#include "vnfscale/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "vnfscale/errors.hpp"
#include "vnfscale/parallel.hpp"

namespace vnfscale {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, int replication) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(static_cast<std::uint64_t>(replication) + 1));
  std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32), static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(a >> 32)};
  return std::mt19937_64(seq);
}

// Aggregate (level, jobs, setups) state and the FCFS bookkeeping shared by
// both event loops. Statistics are collected in `stats`.
class SystemState {
 public:
  SystemState(const SystemParams& p, const SimConfig& c) : p_(p), warmup_(c.effective_warmup()), horizon_(c.horizon) {}

  int level() const { return level_; }
  int jobs() const { return jobs_; }
  int setups() const { return setups_; }
  int servers() const { return p_.n0 + level_; }
  int busy() const { return std::min(jobs_, servers()); }
  int required_setups() const {
    const int excess = std::max(jobs_ - servers(), 0);
    return std::min(excess, p_.k - level_);
  }
  bool queue_empty() const { return waiting_.empty(); }
  std::size_t queue_size() const { return waiting_.size(); }

  void advance(double to) {
    const double lo = std::max(now_, warmup_);
    const double hi = std::min(to, horizon_);
    if (hi > lo) {
      const double len = hi - lo;
      stats.area_jobs += jobs_ * len;
      stats.area_instances += (level_ + setups_) * len;
      stats.observed_time += len;
    }
    now_ = to;
  }

  double now() const { return now_; }
  bool counted(double arrival_time) const { return arrival_time >= warmup_; }

  // Returns true if the job was admitted.
  bool arrive(bool& starts_service) {
    const bool count = counted(now_);
    if (jobs_ == p_.K) {
      if (count) ++stats.blocked;
      return false;
    }
    if (count) ++stats.accepted;
    starts_service = jobs_ < servers();
    ++jobs_;
    if (starts_service) {
      record_wait(now_);
    } else {
      waiting_.push_back(now_);
    }
    return true;
  }

  // Whether an arrival just required one more instance to enter setup.
  bool needs_setup() const { return setups_ < required_setups(); }
  void begin_setup() { ++setups_; }

  // A job that arrived at `arrival_time` completed service. Returns true if
  // the freed server took the head-of-line job, whose arrival time is
  // written to `next_arrival`.
  bool depart(double arrival_time, double& next_arrival) {
    if (counted(arrival_time)) {
      ++stats.sojourns_recorded;
      stats.total_sojourn += now_ - arrival_time;
    }
    --jobs_;
    if (!waiting_.empty()) {
      next_arrival = take_head();
      return true;
    }
    if (level_ > 0) --level_;  // the idle dynamic instance powers off
    return false;
  }

  bool excess_setup() const { return setups_ > required_setups(); }
  void cancel_setup() { --setups_; }

  // An instance finished setup and takes the head-of-line job.
  double complete_setup() {
    --setups_;
    ++level_;
    return take_head();
  }

  void check() const {
    const bool ok = level_ >= 0 && level_ <= p_.k && jobs_ >= 0 && jobs_ <= p_.K &&
                    (level_ == 0 || jobs_ >= servers()) && setups_ == required_setups() &&
                    static_cast<int>(waiting_.size()) == jobs_ - busy();
    if (!ok) {
      throw std::logic_error("simulator state rule violated at t=" + std::to_string(now_) + ": level=" +
                             std::to_string(level_) + " jobs=" + std::to_string(jobs_) +
                             " setups=" + std::to_string(setups_));
    }
  }

  ReplicationStats stats;

 private:
  double take_head() {
    const double arrival = waiting_.front();
    waiting_.pop_front();
    record_wait(arrival);
    return arrival;
  }

  void record_wait(double arrival) {
    if (!counted(arrival)) return;
    ++stats.waits_recorded;
    stats.total_wait += now_ - arrival;
  }

  const SystemParams& p_;
  double warmup_;
  double horizon_;
  double now_ = 0.0;
  int level_ = 0;
  int jobs_ = 0;
  int setups_ = 0;
  std::deque<double> waiting_;
};

// All durations exponential: race of aggregate rates. Which in-service job
// departs is uniform among those in service.
ReplicationStats run_markov(const SystemParams& p, const SimConfig& c, std::mt19937_64& rng) {
  const double arrival_rate = 1.0 / c.interarrival.mean.value_or(1.0 / p.lambda);
  const double service_rate = 1.0 / c.service.mean.value_or(1.0 / p.mu);
  const double setup_rate = 1.0 / c.setup.mean.value_or(1.0 / p.alpha);

  SystemState s(p, c);
  std::vector<double> in_service;  // arrival times
  in_service.reserve(static_cast<std::size_t>(p.total_servers()));
  // 53 random mantissa bits -> [0, 1) and (0, 1].
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto unit_open_low = [&rng] { return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53; };

  for (;;) {
    const double dep_rate = in_service.size() * service_rate;
    const double set_rate = s.setups() * setup_rate;
    const double total = arrival_rate + dep_rate + set_rate;
    const double next = s.now() - std::log(unit_open_low()) / total;
    if (next >= c.horizon) {
      s.advance(c.horizon);
      break;
    }
    s.advance(next);
    ++s.stats.events;
    const double u = unit() * total;
    if (u < arrival_rate) {
      bool starts = false;
      if (s.arrive(starts)) {
        if (starts) in_service.push_back(s.now());
        if (s.needs_setup()) s.begin_setup();
      }
    } else if (u < arrival_rate + dep_rate) {
      auto pick = static_cast<std::size_t>((u - arrival_rate) / service_rate);
      pick = std::min(pick, in_service.size() - 1);
      const double arrival = in_service[pick];
      in_service[pick] = in_service.back();
      in_service.pop_back();
      double head = 0.0;
      if (s.depart(arrival, head)) in_service.push_back(head);
      if (s.excess_setup()) s.cancel_setup();
    } else {
      in_service.push_back(s.complete_setup());
    }
    if (c.check_invariants) {
      s.check();
      if (in_service.size() != static_cast<std::size_t>(s.busy())) throw std::logic_error("in-service count drift");
    }
  }
  return s.stats;
}

enum EventKind : int { kDeparture = 0, kSetupDone = 1, kArrival = 2 };

struct Event {
  double time;
  int kind;
  std::uint64_t seq;
  double arrival;  // departures: the job's arrival time

  // Min-heap order: time, then kind, then insertion sequence.
  bool operator>(const Event& o) const {
    if (time != o.time) return time > o.time;
    if (kind != o.kind) return kind > o.kind;
    return seq > o.seq;
  }
};

// General durations: calendar of per-job departures, per-instance setups and
// the next arrival. Cancelled setups are dropped lazily.
ReplicationStats run_calendar(const SystemParams& p, const SimConfig& c, std::mt19937_64& rng) {
  DurationSampler interarrival(c.interarrival, 1.0 / p.lambda);
  DurationSampler service(c.service, 1.0 / p.mu);
  DurationSampler setup(c.setup, 1.0 / p.alpha);

  SystemState s(p, c);
  std::priority_queue<Event, std::vector<Event>, std::greater<>> calendar;
  std::vector<std::uint64_t> active_setups;  // seq ids, most recent last
  std::uint64_t seq = 0;

  auto schedule = [&](double time, int kind, double arrival) -> std::uint64_t {
    calendar.push(Event{time, kind, seq, arrival});
    return seq++;
  };
  auto start_service = [&](double arrival) { schedule(s.now() + service(rng), kDeparture, arrival); };

  schedule(interarrival(rng), kArrival, 0.0);
  while (!calendar.empty()) {
    const Event e = calendar.top();
    if (e.time >= c.horizon) break;
    calendar.pop();
    if (e.kind == kSetupDone) {
      const auto it = std::find(active_setups.begin(), active_setups.end(), e.seq);
      if (it == active_setups.end()) continue;  // cancelled
      active_setups.erase(it);
    }
    s.advance(e.time);
    ++s.stats.events;
    switch (e.kind) {
      case kArrival: {
        schedule(s.now() + interarrival(rng), kArrival, 0.0);
        bool starts = false;
        if (s.arrive(starts)) {
          if (starts) start_service(s.now());
          if (s.needs_setup()) {
            s.begin_setup();
            active_setups.push_back(schedule(s.now() + setup(rng), kSetupDone, 0.0));
          }
        }
        break;
      }
      case kDeparture: {
        double head = 0.0;
        if (s.depart(e.arrival, head)) start_service(head);
        if (s.excess_setup()) {
          s.cancel_setup();
          active_setups.pop_back();
        }
        break;
      }
      case kSetupDone:
        start_service(s.complete_setup());
        break;
    }
    if (c.check_invariants) {
      s.check();
      if (active_setups.size() != static_cast<std::size_t>(s.setups())) throw std::logic_error("setup clock drift");
    }
  }
  s.advance(c.horizon);
  return s.stats;
}

Estimate summarize(const std::vector<ReplicationStats>& reps, double pooled, double (ReplicationStats::*metric)() const) {
  Estimate e{pooled, std::numeric_limits<double>::infinity()};
  const std::size_t r = reps.size();
  if (r < 2) return e;
  double mean = 0.0;
  for (const auto& rep : reps) mean += (rep.*metric)();
  mean /= static_cast<double>(r);
  double ss = 0.0;
  for (const auto& rep : reps) ss += std::pow((rep.*metric)() - mean, 2);
  const double sd = std::sqrt(ss / static_cast<double>(r - 1));
  const boost::math::students_t dist(static_cast<double>(r - 1));
  e.half_width = boost::math::quantile(dist, 0.975) * sd / std::sqrt(static_cast<double>(r));
  return e;
}

}  // namespace

bool SimConfig::all_exponential() const {
  return interarrival.family == DistributionFamily::kExponential && service.family == DistributionFamily::kExponential &&
         setup.family == DistributionFamily::kExponential;
}

void validate(const SimConfig& c) {
  const double warm = c.effective_warmup();
  if (!(std::isfinite(c.horizon) && warm >= 0.0 && c.horizon > warm)) {
    throw ValidationError(Constraint::kSimulationWindow,
                          "horizon=" + std::to_string(c.horizon) + " warmup=" + std::to_string(warm));
  }
  if (c.replications < 1) throw ValidationError(Constraint::kReplications, std::to_string(c.replications));
  validate(c.interarrival);
  validate(c.service);
  validate(c.setup);
}

double ReplicationStats::Pb() const {
  const std::uint64_t offered = accepted + blocked;
  return offered ? static_cast<double>(blocked) / static_cast<double>(offered) : 0.0;
}

ReplicationStats simulate_once(const SystemParams& params, const SimConfig& config, int replication_index) {
  validate(params);
  validate(config);
  std::mt19937_64 rng = substream(config.seed, replication_index);
  return config.all_exponential() ? run_markov(params, config, rng) : run_calendar(params, config, rng);
}

SimulationResult simulate(const SystemParams& params, const SimConfig& config) {
  validate(params);
  validate(config);
  SimulationResult out;
  out.params = params;
  out.config = config;
  out.replications.resize(static_cast<std::size_t>(config.replications));
  parallel_for(out.replications.size(), config.threads, [&](std::size_t r) {
    out.replications[r] = simulate_once(params, config, static_cast<int>(r));
  });

  ReplicationStats pooled;
  for (const auto& rep : out.replications) {
    pooled.accepted += rep.accepted;
    pooled.blocked += rep.blocked;
    pooled.waits_recorded += rep.waits_recorded;
    pooled.sojourns_recorded += rep.sojourns_recorded;
    pooled.total_wait += rep.total_wait;
    pooled.total_sojourn += rep.total_sojourn;
    pooled.area_jobs += rep.area_jobs;
    pooled.area_instances += rep.area_instances;
    pooled.observed_time += rep.observed_time;
  }
  out.accepted_jobs = pooled.accepted;
  out.blocked_jobs = pooled.blocked;
  out.Wq = summarize(out.replications, pooled.Wq(), &ReplicationStats::Wq);
  out.S = summarize(out.replications, pooled.S(), &ReplicationStats::S);
  out.Pb = summarize(out.replications, pooled.Pb(), &ReplicationStats::Pb);
  out.L = summarize(out.replications, pooled.L(), &ReplicationStats::L);
  out.W = summarize(out.replications, pooled.W(), &ReplicationStats::W);
  return out;
}

bool ComparisonReport::all_covered() const {
  return std::all_of(rows.begin(), rows.end(), [](const MetricComparison& m) { return m.covered; });
}

const MetricComparison& ComparisonReport::row(const std::string& metric) const {
  for (const auto& r : rows) {
    if (r.metric == metric) return r;
  }
  throw std::out_of_range("no comparison row for " + metric);
}

ComparisonReport compare(const SolveReport& analytical, const SimulationResult& simulated) {
  if (!(analytical.distribution.params() == simulated.params)) {
    throw MismatchError("analytical and simulated results use different parameters");
  }
  const SimConfig& c = simulated.config;
  if (!c.all_exponential() || c.interarrival.mean || c.service.mean || c.setup.mean) {
    throw MismatchError("analytical comparison requires exponential durations at the model's rates");
  }
  const PerformanceMetrics& m = analytical.metrics;
  ComparisonReport report;
  auto add = [&](const char* name, double value, const Estimate& e) {
    MetricComparison row{name, value, e.mean, e.half_width, false, std::abs(e.mean - value), 0.0};
    row.covered = row.absolute_gap <= e.half_width + kCoverageFloor;
    if (value != 0.0) {
      row.relative_gap = row.absolute_gap / std::abs(value);
    } else {
      row.relative_gap = row.absolute_gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    report.rows.push_back(row);
  };
  add("Wq", m.Wq, simulated.Wq);
  add("S", m.S, simulated.S);
  add("Pb", m.Pb, simulated.Pb);
  add("L", m.L, simulated.L);
  add("W", m.W, simulated.W);
  return report;
}

}  // namespace vnfscale
