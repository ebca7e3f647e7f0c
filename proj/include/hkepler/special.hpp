// hkepler - closed-form special solutions
//
// Stationary points on the z-axis, the minimal-energy heteroclinic curves
// joining them, and the radial straight-line motions through the origin.
#pragma once

#include <array>
#include <optional>

#include "hkepler/types.hpp"

namespace hkepler::special {

/// Equilibrium at (0, 0, z) with energy H = -k / (4 |z|).
struct StationaryPoint {
    double z{0.0};
    double h{0.0};
    double f3{0.0};        // 8 k z^2 / sqrt(16 z^2) = 2 k |z|
    double j_squared{0.0};  // k^2 + 2 H F3, zero up to rounding
};

/// The two equilibria z = +-k / (4 |H|) of energy H < 0, upper first.
/// Throws no_stationary_solution for H >= 0.
std::array<StationaryPoint, 2> stationary_points(const PotentialParams& params, double h);

/// Ascending heteroclinic orbit from (0, 0, -z0) to (0, 0, z0).
struct HeteroclinicCurve {
    double k{1.0};
    double z0{1.0};
    double theta_at_0{0.0};

    /// H = -k / (4 z0).
    [[nodiscard]] double energy() const { return -k / (4.0 * z0); }
    /// F3 = 2 k z0.
    [[nodiscard]] double f3() const { return 2.0 * k * z0; }
};

/// Curve of energy H < 0 (z0 = k / (4 |H|)). Throws no_stationary_solution
/// for H >= 0.
HeteroclinicCurve heteroclinic_curve(const PotentialParams& params, double h, double theta_at_0 = 0.0);

struct HeteroclinicPoint {
    CylState state;
    double z_dot{0.0};
};

/// Point at height z: r(z) = sqrt(2 (z0^2 - z^2) / z0),
/// theta(z) = log((z0 + z) / (z0 - z)) / 2 + theta(0), with momenta
/// p_S = 2 z', p_R = r' = -2 z z' / (z0 r), z' = sqrt(k) (z0^2 - z^2) / (2 (z0^2 + z^2)).
/// Throws out_of_range unless |z| < z0.
HeteroclinicPoint heteroclinic_point(const HeteroclinicCurve& curve, double z);

/// Time to climb from z = 0 to z1:
/// (2 / sqrt(k)) (z0 log((z0 + z1) / (z0 - z1)) - z1). Throws out_of_range
/// unless |z1| < z0.
double heteroclinic_time(const HeteroclinicCurve& curve, double z1);

/// The same time by adaptive Gauss-Kronrod quadrature of dz / z'(z).
double heteroclinic_time_quadrature(const HeteroclinicCurve& curve, double z1);

/// Straight-line motion in z = 0 along theta = const with
/// r'^2 / 2 = H + k / r^2. The squared radius is exactly quadratic in time:
/// r(t)^2 = r0^2 + 2 r0 p_R0 t + 2 H t^2.
struct RadialSolution {
    double k{1.0};
    double h{0.0};
    double theta{0.0};
    double r0{0.0};
    double p_r0{0.0};
    /// sqrt(k / |H|) for H < 0.
    std::optional<double> turning_radius;
    /// Time at which r reaches the turning radius (outgoing, H < 0).
    std::optional<double> turning_time;
    /// Time at which the motion reaches the origin, when it does.
    std::optional<double> collision_time;

    [[nodiscard]] double radius_at(double t) const;
    [[nodiscard]] double p_r_at(double t) const;
    /// Time to move from r0 to r along the outgoing (or incoming) branch,
    /// from the quadrature of dr / sqrt(2 (H + k / r^2)).
    [[nodiscard]] double time_to_radius(double r) const;
    [[nodiscard]] CylState state_at(double t) const;
};

/// Throws invalid_argument for r0 <= 0 and inconsistent_state when H < 0
/// and r0 exceeds the turning radius.
RadialSolution radial_solution(const PotentialParams& params, double h, double r0, bool outgoing,
                               double theta = 0.0);

}  // namespace hkepler::special
