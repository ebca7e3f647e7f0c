#include "hkepler/sampling.hpp"

#include <cmath>
#include <numbers>

#include "hkepler/geometry.hpp"

namespace hkepler::sampling {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

Rng stream(std::uint64_t seed, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
    return Rng(seq);
}

CylState random_state(Rng& rng) {
    constexpr double pi = std::numbers::pi;
    CylState s;
    s.r = uniform(rng, 0.3, 2.0);
    s.theta = uniform(rng, -pi, pi);
    s.z = uniform(rng, -1.0, 1.0);
    s.p_r = uniform(rng, -1.0, 1.0);
    s.p_s = uniform(rng, -1.0, 1.0);
    return s;
}

CylPoint random_point(Rng& rng) {
    constexpr double pi = std::numbers::pi;
    return {uniform(rng, 0.5, 2.0), uniform(rng, -pi, pi), uniform(rng, -1.0, 1.0)};
}

CartPoint random_gauge_point(Rng& rng, double rho_min, double rho_max) {
    constexpr double pi = std::numbers::pi;
    // On the unit gauge sphere r^4 + 16 z^2 = 1: r^2 = cos(phi), 4 z = sin(phi).
    // phi stays away from +-pi/2 so the point keeps off the z-axis.
    const double phi = uniform(rng, -0.45 * pi, 0.45 * pi);
    const double theta = uniform(rng, -pi, pi);
    const double rho = uniform(rng, rho_min, rho_max);
    const CartPoint unit = geometry::to_cartesian({std::sqrt(std::cos(phi)), theta, std::sin(phi) / 4.0});
    return geometry::dilate(rho, unit);
}

}  // namespace hkepler::sampling
