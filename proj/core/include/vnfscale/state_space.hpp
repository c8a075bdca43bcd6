#pragma once

#include <cstddef>
#include <vector>

#include "vnfscale/params.hpp"

namespace vnfscale {

// A state of the chain: `level` dynamic instances active, `jobs` in system.
struct State {
  int level = 0;
  int jobs = 0;

  friend bool operator==(const State&, const State&) = default;
};

// Flat indexing of the state space.
//
// Level 0 holds jobs 0..K; level i >= 1 holds jobs n_i..K. States are laid
// out level by level, jobs ascending, so each level is a contiguous slice.
class StateSpace {
 public:
  // Validates `params`; throws ValidationError.
  explicit StateSpace(const SystemParams& params);

  const SystemParams& params() const noexcept { return params_; }
  std::size_t total_states() const noexcept { return offsets_.back(); }
  int levels() const noexcept { return params_.k + 1; }

  // Smallest job count present at `level`.
  int first_jobs(int level) const noexcept { return level == 0 ? 0 : params_.n0 + level; }

  // Index of state (level, first_jobs(level)).
  std::size_t level_offset(int level) const noexcept { return offsets_[static_cast<std::size_t>(level)]; }
  std::size_t level_size(int level) const noexcept {
    return offsets_[static_cast<std::size_t>(level) + 1] - offsets_[static_cast<std::size_t>(level)];
  }

  bool contains(int level, int jobs) const noexcept;

  // Throws DomainError for non-states.
  std::size_t index(int level, int jobs) const;
  State decode(std::size_t index) const;

  // Instances in SETUP in state (level, jobs): min(max(j - n_i, 0), N - n_i).
  // Throws DomainError for non-states.
  int setup_count(int level, int jobs) const;

  // Unchecked variant for hot loops; the caller guarantees (level, jobs) is a state.
  int setup_count_unchecked(int level, int jobs) const noexcept {
    const int n_i = params_.n0 + level;
    const int excess = jobs > n_i ? jobs - n_i : 0;
    const int cap = params_.k - level;
    return excess < cap ? excess : cap;
  }

 private:
  SystemParams params_;
  std::vector<std::size_t> offsets_;  // levels() + 1 entries
};

// Validating factory; equivalent to the constructor.
StateSpace build_state_space(const SystemParams& params);

}  // namespace vnfscale
