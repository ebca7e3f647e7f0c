// hkepler - seeded random states for the property suites
#pragma once

#include <cstdint>
#include <random>

#include "hkepler/types.hpp"

namespace hkepler::sampling {

using Rng = std::mt19937_64;

/// Independent stream for a named consumer, derived from the run seed.
Rng stream(std::uint64_t seed, std::uint64_t salt);

/// r in [0.3, 2], theta in [-pi, pi], z in [-1, 1], p_R and p_S in [-1, 1].
CylState random_state(Rng& rng);

/// Position with r in [0.5, 2], theta in [-pi, pi], z in [-1, 1].
CylPoint random_point(Rng& rng);

/// Cartesian point with gauge rho uniform in [rho_min, rho_max] and a
/// uniformly random direction on the unit gauge sphere.
CartPoint random_gauge_point(Rng& rng, double rho_min, double rho_max);

}  // namespace hkepler::sampling
