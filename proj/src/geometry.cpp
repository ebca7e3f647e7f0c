// hkepler - Heisenberg group structure and phase-space coordinate changes
#include "hkepler/geometry.hpp"

#include <cmath>
#include <numbers>

namespace hkepler::geometry {

CartPoint group_mul(const CartPoint& p, const CartPoint& q) {
    return {p.x + q.x, p.y + q.y, p.z + q.z + 0.5 * (p.x * q.y - q.x * p.y)};
}

CartPoint group_inverse(const CartPoint& p) { return {-p.x, -p.y, -p.z}; }

CartPoint dilate(double lambda, const CartPoint& p) {
    if (!(lambda > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "dilation factor must be positive");
    }
    return {lambda * p.x, lambda * p.y, lambda * lambda * p.z};
}

CylState to_cylindrical(const CartState& s) {
    const double r = std::hypot(s.point.x, s.point.y);
    if (r < kAxisThreshold) {
        throw Error(ErrorCode::axis_singularity, "cylindrical momenta are undefined on the z-axis");
    }
    double theta = std::atan2(s.point.y, s.point.x);
    if (theta <= -std::numbers::pi) theta = std::numbers::pi;  // y = -0.0 on the negative x-axis
    // x/r and y/r are the cosine and sine of the principal angle.
    const double c = s.point.x / r;
    const double sn = s.point.y / r;
    return {r, theta, s.point.z, s.p_x * c + s.p_y * sn, r * (s.p_y * c - s.p_x * sn)};
}

CartState from_cylindrical(const CylState& s) {
    if (s.r < kAxisThreshold) {
        throw Error(ErrorCode::axis_singularity, "cylindrical momenta are undefined on the z-axis");
    }
    const double c = std::cos(s.theta);
    const double sn = std::sin(s.theta);
    const double transverse = s.p_s / s.r;
    return {{s.r * c, s.r * sn, s.z}, s.p_r * c - transverse * sn, s.p_r * sn + transverse * c};
}

CartPoint to_cartesian(const CylPoint& p) {
    return {p.r * std::cos(p.theta), p.r * std::sin(p.theta), p.z};
}

}  // namespace hkepler::geometry
