// hkepler - core value types shared by every module
#pragma once

#include <array>
#include <cmath>

#include "hkepler/error.hpp"

namespace hkepler {

/// Points closer than this to the z-axis have no cylindrical momenta.
inline constexpr double kAxisThreshold = 1e-12;
/// Gauge values below this are treated as the origin singularity.
inline constexpr double kOriginThreshold = 1e-10;

/// Group element (x, y, z) of the Heisenberg group.
struct CartPoint {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    friend bool operator==(const CartPoint&, const CartPoint&) = default;
};

/// Cartesian phase point: position plus momenta dual to the frame {X, Y}.
struct CartState {
    CartPoint point;
    double p_x{0.0};
    double p_y{0.0};

    friend bool operator==(const CartState&, const CartState&) = default;
};

/// Position in cylindrical coordinates. theta is never wrapped.
struct CylPoint {
    double r{0.0};
    double theta{0.0};
    double z{0.0};
};

/// Reduced phase point (r, theta, z, p_R, p_S). p_R pairs with the radial
/// field R = d/dr and p_S with S = d/dtheta + (r^2/2) d/dz.
struct CylState {
    double r{0.0};
    double theta{0.0};
    double z{0.0};
    double p_r{0.0};
    double p_s{0.0};

    [[nodiscard]] CylPoint position() const { return {r, theta, z}; }

    [[nodiscard]] std::array<double, 5> as_array() const { return {r, theta, z, p_r, p_s}; }

    static CylState from_array(const std::array<double, 5>& a) {
        return {a[0], a[1], a[2], a[3], a[4]};
    }

    [[nodiscard]] bool finite() const {
        return std::isfinite(r) && std::isfinite(theta) && std::isfinite(z) &&
               std::isfinite(p_r) && std::isfinite(p_s);
    }

    friend bool operator==(const CylState&, const CylState&) = default;
};

/// Coupling constant of the potential U = -k / rho^2.
class PotentialParams {
public:
    explicit PotentialParams(double k = 1.0) : k_(k) {
        if (!(k > 0.0) || !std::isfinite(k)) {
            throw Error(ErrorCode::invalid_argument, "coupling constant k must be positive and finite");
        }
    }

    [[nodiscard]] double k() const noexcept { return k_; }

private:
    double k_;
};

}  // namespace hkepler
