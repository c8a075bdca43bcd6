#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vnfscale/errors.hpp"
#include "vnfscale/simulator.hpp"

namespace vnfscale {
namespace {

SystemParams small_chain() { return {1.5, 1.0, 0.25, 2, 2, 7}; }

SimConfig short_run(int replications = 4) {
  SimConfig c;
  c.horizon = 2e4;
  c.replications = replications;
  c.seed = 11;
  return c;
}

void expect_same(const ReplicationStats& a, const ReplicationStats& b) {
  EXPECT_EQ(a.accepted, b.accepted);
  EXPECT_EQ(a.blocked, b.blocked);
  EXPECT_EQ(a.events, b.events);
  EXPECT_EQ(a.total_wait, b.total_wait);
  EXPECT_EQ(a.area_jobs, b.area_jobs);
  EXPECT_EQ(a.area_instances, b.area_instances);
}

TEST(Distribution, ParseAndPrint) {
  EXPECT_EQ(parse_distribution("exponential").family, DistributionFamily::kExponential);
  const DistributionSpec erlang = parse_distribution("erlang:5");
  EXPECT_EQ(erlang.family, DistributionFamily::kErlang);
  EXPECT_EQ(erlang.shape, 5.0);
  EXPECT_EQ(parse_distribution("pareto").shape, 2.5);
  EXPECT_EQ(to_string(erlang), "erlang:5");
  EXPECT_THROW(parse_distribution("gamma:2"), ValidationError);
  EXPECT_THROW(parse_distribution("pareto:1"), ValidationError);
  EXPECT_THROW(parse_distribution("erlang:2.5"), ValidationError);
  EXPECT_THROW(parse_distribution("uniform:0"), ValidationError);
}

TEST(Distribution, SampleMeans) {
  std::mt19937_64 rng(5);
  for (const char* text : {"exponential", "deterministic", "erlang:4", "uniform:0.5", "truncated-normal:0.2", "pareto:3"}) {
    DurationSampler draw(parse_distribution(text), 2.0);
    double total = 0.0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) {
      const double x = draw(rng);
      ASSERT_GT(x, 0.0) << text;
      total += x;
    }
    EXPECT_NEAR(total / n, 2.0, 0.03) << text;
  }
}

TEST(SimConfigCheck, RejectsBadWindows) {
  SimConfig c;
  c.horizon = 100.0;
  c.warmup = 100.0;
  EXPECT_THROW(validate(c), ValidationError);
  c.warmup = 0.0;
  c.replications = 0;
  EXPECT_THROW(validate(c), ValidationError);
}

TEST(Simulator, SameSeedSameResult) {
  const SimConfig c = short_run();
  const SimulationResult a = simulate(small_chain(), c);
  const SimulationResult b = simulate(small_chain(), c);
  ASSERT_EQ(a.replications.size(), b.replications.size());
  for (std::size_t r = 0; r < a.replications.size(); ++r) expect_same(a.replications[r], b.replications[r]);
  EXPECT_EQ(a.Wq.mean, b.Wq.mean);
  EXPECT_EQ(a.Wq.half_width, b.Wq.half_width);
}

TEST(Simulator, ThreadCountDoesNotMatter) {
  SimConfig one = short_run(5);
  one.threads = 1;
  SimConfig many = one;
  many.threads = 4;
  const SimulationResult a = simulate(small_chain(), one);
  const SimulationResult b = simulate(small_chain(), many);
  for (std::size_t r = 0; r < a.replications.size(); ++r) expect_same(a.replications[r], b.replications[r]);
}

TEST(Simulator, ReplicationIsPureFunctionOfIndex) {
  const SimConfig c = short_run(3);
  const SimulationResult all = simulate(small_chain(), c);
  expect_same(simulate_once(small_chain(), c, 2), all.replications[2]);
}

TEST(Simulator, Conservation) {
  const SimConfig c = short_run(3);
  const SimulationResult r = simulate(small_chain(), c);
  std::uint64_t accepted = 0;
  std::uint64_t blocked = 0;
  double area = 0.0;
  double time = 0.0;
  for (const ReplicationStats& rep : r.replications) {
    accepted += rep.accepted;
    blocked += rep.blocked;
    area += rep.area_jobs;
    time += rep.observed_time;
    EXPECT_DOUBLE_EQ(rep.observed_time, c.horizon - c.effective_warmup());
    EXPECT_LE(rep.waits_recorded, rep.accepted);
  }
  EXPECT_EQ(r.accepted_jobs, accepted);
  EXPECT_EQ(r.blocked_jobs, blocked);
  EXPECT_EQ(r.Pb.mean, static_cast<double>(blocked) / static_cast<double>(accepted + blocked));
  EXPECT_EQ(r.L.mean, area / time);
}

TEST(Simulator, StateRulesHoldAfterEveryEvent) {
  SimConfig c = short_run(2);
  c.check_invariants = true;
  EXPECT_NO_THROW(simulate(small_chain(), c));
  c.service = parse_distribution("deterministic");
  c.setup = parse_distribution("uniform:0.9");
  EXPECT_NO_THROW(simulate(small_chain(), c));
  c.interarrival = parse_distribution("erlang:3");
  c.service = parse_distribution("pareto:2.2");
  c.setup = parse_distribution("truncated-normal:0.7");
  EXPECT_NO_THROW(simulate(SystemParams{9.0, 1.0, 0.1, 4, 6, 20}, c));
}

TEST(Simulator, CalendarEngineAgreesWithMarkovEngine) {
  SimConfig markov = short_run(6);
  SimConfig calendar = markov;
  calendar.service.mean = 1.0;  // forces the general engine with identical laws
  const SolveReport exact = solve(small_chain());
  const SimulationResult a = simulate(small_chain(), markov);
  const SimulationResult b = simulate(small_chain(), calendar);
  for (const SimulationResult* r : {&a, &b}) {
    EXPECT_NEAR(r->Wq.mean, exact.metrics.Wq, 4 * r->Wq.half_width);
    EXPECT_NEAR(r->S.mean, exact.metrics.S, 4 * r->S.half_width);
  }
}

TEST(Simulator, ClassicalBlocking) {
  const SystemParams p{4.0, 1.0, 1.0, 5, 0, 20};
  SimConfig c;
  c.horizon = 1e5;
  c.replications = 30;
  c.seed = 3;
  const SimulationResult r = simulate(p, c);
  const double exact = testing::mmck(4.0, 1.0, 5, 20).Pb;
  EXPECT_LE(std::abs(r.Pb.mean - exact), r.Pb.half_width + kCoverageFloor) << r.Pb.mean << " vs " << exact;
}

TEST(Simulator, SmallChainCoverageAtFullProtocol) {
  SimConfig c;
  c.seed = 2;
  const SimulationResult r = simulate(small_chain(), c);
  const ComparisonReport report = compare(solve(small_chain()), r);
  EXPECT_TRUE(report.row("Wq").covered) << report.row("Wq").simulated << " +- " << report.row("Wq").half_width;
  EXPECT_TRUE(report.row("S").covered) << report.row("S").simulated << " +- " << report.row("S").half_width;
}

TEST(Simulator, EmptySystemLimit) {
  SystemParams p = default_params();
  p.lambda = 0.001;
  SimConfig c;
  c.horizon = 1e6;
  c.replications = 2;
  const SimulationResult r = simulate(p, c);
  EXPECT_LT(r.Wq.mean, 1e-3);
  EXPECT_LT(r.S.mean, 1e-3);
}

TEST(Simulator, ReferencePointValueCovered) {
  SimConfig c;
  c.seed = 42;
  const SimulationResult r = simulate(default_params(), c);
  EXPECT_LE(std::abs(r.Wq.mean - 1.17), r.Wq.half_width) << r.Wq.mean << " +- " << r.Wq.half_width;
}

TEST(Simulator, DeterministicServiceSmoke) {
  SimConfig c;
  c.horizon = 5e3;
  c.replications = 2;
  c.service = parse_distribution("deterministic");
  const SimulationResult r = simulate(default_params(), c);
  for (const Estimate* e : {&r.Wq, &r.S, &r.Pb, &r.L, &r.W}) {
    EXPECT_TRUE(std::isfinite(e->mean));
    EXPECT_TRUE(std::isfinite(e->half_width));
  }
}

TEST(Compare, PerturbedInputIsMismatch) {
  SystemParams other = small_chain();
  other.lambda = 1.6;
  const SimulationResult r = simulate(small_chain(), short_run(2));
  EXPECT_THROW(compare(solve(other), r), MismatchError);
}

TEST(Compare, NonExponentialIsMismatch) {
  SimConfig c = short_run(2);
  c.setup = parse_distribution("deterministic");
  EXPECT_THROW(compare(solve(small_chain()), simulate(small_chain(), c)), MismatchError);
}

TEST(Compare, ZeroLoad) {
  SystemParams p = default_params();
  p.lambda = 0.001;
  SimConfig c;
  c.horizon = 2e5;
  c.replications = 3;
  const ComparisonReport report = compare(solve(p), simulate(p, c));
  EXPECT_LT(report.row("Wq").analytical, 1e-3);
  EXPECT_LT(report.row("Wq").simulated, 1e-3);
  EXPECT_LT(report.row("Wq").absolute_gap, 1e-3);
}

TEST(Compare, RowOrderAndSingleReplication) {
  SimConfig c = short_run(1);
  const ComparisonReport report = compare(solve(small_chain()), simulate(small_chain(), c));
  ASSERT_EQ(report.rows.size(), 5u);
  EXPECT_EQ(report.rows[0].metric, "Wq");
  EXPECT_EQ(report.rows[4].metric, "W");
  EXPECT_TRUE(std::isinf(report.rows[0].half_width));
  EXPECT_TRUE(report.all_covered());
}

}  // namespace
}  // namespace vnfscale
