#include "vnfscale/state_space.hpp"

#include <algorithm>
#include <string>

#include "vnfscale/errors.hpp"

namespace vnfscale {

namespace {

[[noreturn]] void throw_not_a_state(int level, int jobs) {
  throw DomainError("(" + std::to_string(level) + ", " + std::to_string(jobs) + ") is not a state");
}

}  // namespace

StateSpace::StateSpace(const SystemParams& params) : params_(params) {
  validate(params_);
  offsets_.reserve(static_cast<std::size_t>(params_.k) + 2);
  std::size_t offset = 0;
  for (int level = 0; level <= params_.k; ++level) {
    offsets_.push_back(offset);
    offset += static_cast<std::size_t>(params_.K - first_jobs(level) + 1);
  }
  offsets_.push_back(offset);
}

bool StateSpace::contains(int level, int jobs) const noexcept {
  if (level < 0 || level > params_.k) return false;
  return jobs >= first_jobs(level) && jobs <= params_.K;
}

std::size_t StateSpace::index(int level, int jobs) const {
  if (!contains(level, jobs)) throw_not_a_state(level, jobs);
  return level_offset(level) + static_cast<std::size_t>(jobs - first_jobs(level));
}

State StateSpace::decode(std::size_t index) const {
  if (index >= total_states()) throw DomainError("state index " + std::to_string(index) + " out of range");
  // Last offset that is <= index.
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index) - 1;
  const int level = static_cast<int>(it - offsets_.begin());
  return State{level, first_jobs(level) + static_cast<int>(index - *it)};
}

int StateSpace::setup_count(int level, int jobs) const {
  if (!contains(level, jobs)) throw_not_a_state(level, jobs);
  return setup_count_unchecked(level, jobs);
}

StateSpace build_state_space(const SystemParams& params) { return StateSpace(params); }

}  // namespace vnfscale
