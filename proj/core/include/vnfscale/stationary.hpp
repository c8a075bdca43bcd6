#pragma once

#include <span>
#include <vector>

#include "vnfscale/state_space.hpp"

namespace vnfscale {

// Probabilities over a StateSpace, in its flat layout.
class StationaryDistribution {
 public:
  // Takes ownership of `pi`; its size must equal total_states().
  StationaryDistribution(StateSpace space, std::vector<double> pi);

  const StateSpace& state_space() const noexcept { return space_; }
  const SystemParams& params() const noexcept { return space_.params(); }

  std::span<const double> values() const noexcept { return pi_; }
  std::span<const double> level(int level) const noexcept {
    return std::span<const double>(pi_).subspan(space_.level_offset(level), space_.level_size(level));
  }

  double at(int level, int jobs) const { return pi_[space_.index(level, jobs)]; }
  double operator[](std::size_t index) const noexcept { return pi_[index]; }

  double total_mass() const noexcept;

 private:
  StateSpace space_;
  std::vector<double> pi_;
};

}  // namespace vnfscale
