#include <gtest/gtest.h>

#include <random>
#include <set>

#include "vnfscale/errors.hpp"
#include "vnfscale/params.hpp"
#include "vnfscale/state_space.hpp"

namespace vnfscale {
namespace {

SystemParams small_chain() { return {1.5, 1.0, 0.25, 2, 2, 7}; }

TEST(StateSpace, SmallChainCounts) {
  const StateSpace space(small_chain());
  EXPECT_EQ(space.total_states(), 17u);
  EXPECT_EQ(space.level_size(0), 8u);
  EXPECT_EQ(space.level_size(1), 5u);
  EXPECT_EQ(space.level_size(2), 4u);
}

TEST(StateSpace, LevelZeroOnly) {
  SystemParams p{1.0, 1.0, 1.0, 5, 0, 10};
  EXPECT_EQ(build_state_space(p).total_states(), 11u);
}

TEST(StateSpace, DefaultsWithSixtyInstances) {
  SystemParams p = default_params();
  p.k = 60;
  EXPECT_EQ(StateSpace(p).total_states(), 6881u);
}

TEST(StateSpace, MatchesEnumeration) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n0 = std::uniform_int_distribution(1, 15)(rng);
    const int k = std::uniform_int_distribution(0, 10)(rng);
    const int K = n0 + k + std::uniform_int_distribution(0, 20)(rng);
    const StateSpace space(SystemParams{1.0, 1.0, 0.5, n0, k, K});

    std::size_t expected = 0;
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= K; ++j) {
        if (i == 0 || j >= n0 + i) ++expected;
      }
    }
    ASSERT_EQ(space.total_states(), expected) << "n0=" << n0 << " k=" << k << " K=" << K;

    std::set<std::pair<int, int>> seen;
    for (std::size_t idx = 0; idx < space.total_states(); ++idx) {
      const State s = space.decode(idx);
      ASSERT_TRUE(space.contains(s.level, s.jobs));
      ASSERT_EQ(space.index(s.level, s.jobs), idx);
      seen.emplace(s.level, s.jobs);
    }
    EXPECT_EQ(seen.size(), expected);
  }
}

TEST(StateSpace, SetupCount) {
  const StateSpace space(small_chain());
  EXPECT_EQ(space.setup_count(0, 7), 2);
  EXPECT_EQ(space.setup_count(1, 5), 1);
  EXPECT_EQ(space.setup_count(0, 3), 1);
  EXPECT_EQ(space.setup_count(2, 7), 0);
  for (int i = 1; i <= 2; ++i) EXPECT_EQ(space.setup_count(i, 2 + i), 0);
  for (int j = 0; j <= 2; ++j) EXPECT_EQ(space.setup_count(0, j), 0);
}

TEST(StateSpace, RejectsNonStates) {
  const StateSpace space(small_chain());
  EXPECT_THROW(space.index(1, 2), DomainError);
  EXPECT_THROW(space.index(0, 8), DomainError);
  EXPECT_THROW(space.index(3, 7), DomainError);
  EXPECT_THROW(space.setup_count(2, 3), DomainError);
  EXPECT_THROW(space.decode(17), DomainError);
}

TEST(Params, Validation) {
  auto expect_violation = [](SystemParams p, Constraint c) {
    try {
      validate(p);
      ADD_FAILURE() << "accepted invalid params";
    } catch (const ValidationError& e) {
      EXPECT_EQ(e.constraint(), c) << e.what();
    }
  };
  SystemParams p = small_chain();
  EXPECT_NO_THROW(validate(p));
  p.lambda = 0.0;
  expect_violation(p, Constraint::kArrivalRatePositive);
  p = small_chain();
  p.mu = -1.0;
  expect_violation(p, Constraint::kServiceRatePositive);
  p = small_chain();
  p.alpha = 0.0;
  expect_violation(p, Constraint::kSetupRatePositive);
  p = small_chain();
  p.n0 = 0;
  expect_violation(p, Constraint::kLegacyAtLeastOne);
  p = small_chain();
  p.k = -1;
  expect_violation(p, Constraint::kInstancesNonNegative);
  p = small_chain();
  p.K = 3;
  expect_violation(p, Constraint::kCapacityAtLeastServers);
}

TEST(Params, KEqualsNIsValid) {
  SystemParams p = small_chain();
  p.K = 4;
  const StateSpace space(p);
  EXPECT_EQ(space.level_size(2), 1u);
}

}  // namespace
}  // namespace vnfscale
