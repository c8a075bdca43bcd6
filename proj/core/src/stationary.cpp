#include "vnfscale/stationary.hpp"

#include <numeric>
#include <stdexcept>

namespace vnfscale {

StationaryDistribution::StationaryDistribution(StateSpace space, std::vector<double> pi)
    : space_(std::move(space)), pi_(std::move(pi)) {
  if (pi_.size() != space_.total_states()) {
    throw std::invalid_argument("distribution size does not match the state space");
  }
}

double StationaryDistribution::total_mass() const noexcept {
  return std::accumulate(pi_.begin(), pi_.end(), 0.0);
}

}  // namespace vnfscale
