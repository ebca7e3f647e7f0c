// hkepler - central finite differences used by every numeric certificate
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace hkepler::fd {

/// Step for first derivatives: cbrt(eps) * max(1, |x|).
inline double first_order_step(double x) {
    static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
    return base * std::max(1.0, std::abs(x));
}

/// Step for nested (second-derivative) stencils: eps^(1/4) * max(1, |x|).
inline double second_order_step(double x) {
    static const double base = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
    return base * std::max(1.0, std::abs(x));
}

/// Adjusts h so that x + h and x - h are exactly representable offsets.
inline double representable_step(double x, double h) {
    volatile double shifted = x + h;
    return shifted - x;
}

/// (f(x + h) - f(x - h)) / 2h.
template <typename F>
double central(F&& f, double x, double h) {
    h = representable_step(x, h);
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Central-difference gradient of f : array<double, N> -> double, with
/// per-coordinate steps first_order_step(x_i).
template <std::size_t N, typename F>
std::array<double, N> gradient(F&& f, const std::array<double, N>& x) {
    std::array<double, N> g{};
    for (std::size_t i = 0; i < N; ++i) {
        const double h = representable_step(x[i], first_order_step(x[i]));
        auto xp = x;
        auto xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

}  // namespace hkepler::fd
