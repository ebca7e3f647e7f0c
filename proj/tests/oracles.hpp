// Independent reference computations for the tests. Nothing here calls into
// the library beyond plain value types.
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "hkepler/types.hpp"

namespace oracle {

using Vec5 = std::array<double, 5>;  // x, y, z, p_X, p_Y

// Nonholonomic equations in the left-invariant frame: x'' = -XU, y'' = -YU,
// z' = (x y' - y x') / 2, with U = -k / sqrt((x^2 + y^2)^2 + 16 z^2).
inline Vec5 cartesian_rhs(const Vec5& s, double k) {
    const double x = s[0], y = s[1], z = s[2];
    const double r2 = x * x + y * y;
    const double d = r2 * r2 + 16.0 * z * z;
    const double d32 = d * std::sqrt(d);
    // dU/dx = 2 k r^2 x / D^(3/2), dU/dz = 16 k z / D^(3/2)
    const double ux = 2.0 * k * r2 * x / d32;
    const double uy = 2.0 * k * r2 * y / d32;
    const double uz = 16.0 * k * z / d32;
    return {s[3], s[4], 0.5 * (x * s[4] - y * s[3]), -(ux - 0.5 * y * uz), -(uy + 0.5 * x * uz)};
}

inline Vec5 rk4_step(const Vec5& s, double dt, double k) {
    auto add = [](const Vec5& a, const Vec5& b, double c) {
        Vec5 o{};
        for (int i = 0; i < 5; ++i) o[i] = a[i] + c * b[i];
        return o;
    };
    const Vec5 k1 = cartesian_rhs(s, k);
    const Vec5 k2 = cartesian_rhs(add(s, k1, dt / 2), k);
    const Vec5 k3 = cartesian_rhs(add(s, k2, dt / 2), k);
    const Vec5 k4 = cartesian_rhs(add(s, k3, dt), k);
    Vec5 o{};
    for (int i = 0; i < 5; ++i) o[i] = s[i] + dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return o;
}

inline Vec5 cartesian_flow(Vec5 s, double t, int steps, double k) {
    const double dt = t / steps;
    for (int i = 0; i < steps; ++i) s = rk4_step(s, dt, k);
    return s;
}

inline double energy(const Vec5& s, double k) {
    const double r2 = s[0] * s[0] + s[1] * s[1];
    return 0.5 * (s[3] * s[3] + s[4] * s[4]) - k / std::sqrt(r2 * r2 + 16.0 * s[2] * s[2]);
}

// Heisenberg product written out by hand.
inline std::array<double, 3> mul(const std::array<double, 3>& p, const std::array<double, 3>& q) {
    return {p[0] + q[0], p[1] + q[1], p[2] + q[2] + 0.5 * (p[0] * q[1] - q[0] * p[1])};
}

// 8 z^2 H + k sqrt(r^4 + 16 z^2) - J r^2 cos 2(theta - theta0) - F3
inline double surface(double r, double theta, double z, double k, double h, double j, double theta0, double f3) {
    return 8.0 * z * z * h + k * std::sqrt(r * r * r * r + 16.0 * z * z) - j * r * r * std::cos(2.0 * (theta - theta0)) -
           f3;
}

// Reference trajectory start: k = 1, (1, 0, 0), p_X = 0, p_Y = 0.1.
inline constexpr double kRefH = -0.995;
inline constexpr double kRefF3 = 0.01;
inline constexpr double kRefJ = 0.99;

inline hkepler::CylState random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> r(0.3, 2.0);
    std::uniform_real_distribution<double> a(-std::numbers::pi, std::numbers::pi);
    return {r(rng), a(rng), u(rng), u(rng), u(rng)};
}

}  // namespace oracle
