#include "vnfscale/generator.hpp"

namespace vnfscale {

std::vector<Transition> list_transitions(const StateSpace& space) {
  std::vector<Transition> out;
  for_each_transition(space, [&](std::size_t from, std::size_t to, double rate, TransitionKind kind) {
    out.push_back(Transition{space.decode(from), space.decode(to), rate, kind});
  });
  return out;
}

}  // namespace vnfscale
