#pragma once

#include <cstddef>

#include "vnfscale/params.hpp"
#include "vnfscale/stationary.hpp"

namespace vnfscale {

inline constexpr std::size_t kDenseOracleMaxStates = 20000;

// Stationary distribution by direct elimination on the full generator built
// from the transition rules (see generator.hpp), independent of the level
// recursion. Uses Grassmann-Taqqu-Heyman state reduction, which never
// subtracts and so keeps every entry to high relative accuracy, on the
// generator's band.
//
// Throws SizeGuardError above kDenseOracleMaxStates states and
// NumericalFault if a reduced state has no way out (reducible chain).
StationaryDistribution dense_oracle(const SystemParams& params);

}  // namespace vnfscale
