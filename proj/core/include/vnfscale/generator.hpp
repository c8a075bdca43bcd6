#pragma once

#include <cstddef>
#include <vector>

#include "vnfscale/state_space.hpp"

namespace vnfscale {

enum class TransitionKind { kArrival, kDeparture, kSetupComplete };

struct Transition {
  State from;
  State to;
  double rate = 0.0;
  TransitionKind kind = TransitionKind::kArrival;
};

// Calls fn(from_index, to_index, rate, kind) for every off-diagonal entry of
// the generator, in flat-index order of `from`.
//
//   arrival      (i,j) -> (i,j+1)   at lambda, j < K
//   departure    (0,j) -> (0,j-1)   at min(j,n0)*mu
//                (i,j) -> (i,j-1)   at n_i*mu, or (i-1,j-1) when j-1 < n_i
//   setup done   (i,j) -> (i+1,j)   at setup_count(i,j)*alpha
template <typename Fn>
void for_each_transition(const StateSpace& space, Fn&& fn) {
  const SystemParams& p = space.params();
  for (int level = 0; level <= p.k; ++level) {
    const int n_i = p.n0 + level;
    for (int j = space.first_jobs(level); j <= p.K; ++j) {
      const std::size_t from = space.index(level, j);
      if (j < p.K) fn(from, from + 1, p.lambda, TransitionKind::kArrival);
      if (level == 0) {
        if (j > 0) fn(from, from - 1, (j < p.n0 ? j : p.n0) * p.mu, TransitionKind::kDeparture);
      } else if (j - 1 >= n_i) {
        fn(from, from - 1, n_i * p.mu, TransitionKind::kDeparture);
      } else {
        fn(from, space.index(level - 1, j - 1), n_i * p.mu, TransitionKind::kDeparture);
      }
      const int setups = space.setup_count_unchecked(level, j);
      if (setups > 0) fn(from, space.index(level + 1, j), setups * p.alpha, TransitionKind::kSetupComplete);
    }
  }
}

std::vector<Transition> list_transitions(const StateSpace& space);

}  // namespace vnfscale
