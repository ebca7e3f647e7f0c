// hkepler - gauge, gravitational potential and its harmonicity certificate
#include "hkepler/potential.hpp"

#include <algorithm>
#include <cmath>

#include "hkepler/finite_diff.hpp"

namespace hkepler::potential {

double gauge_rho_squared(double r, double z) {
    const double r2 = r * r;
    return std::sqrt(r2 * r2 + 16.0 * z * z);
}

double gauge_rho(const CartPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    return std::sqrt(std::sqrt(r2 * r2 + 16.0 * p.z * p.z));
}

namespace {

double checked_potential(double rho2, double k) {
    if (!(rho2 > kOriginThreshold * kOriginThreshold)) {
        throw Error(ErrorCode::origin_singularity, "potential is singular at the origin");
    }
    return -k / rho2;
}

}  // namespace

double potential_u(const CartPoint& p, const PotentialParams& params) {
    const double r2 = p.x * p.x + p.y * p.y;
    return checked_potential(std::sqrt(r2 * r2 + 16.0 * p.z * p.z), params.k());
}

double potential_u(const CylPoint& p, const PotentialParams& params) {
    return checked_potential(gauge_rho_squared(p.r, p.z), params.k());
}

double sublaplacian(const ScalarField& u, const CartPoint& p, double h_xy, double h_z) {
    // First-level horizontal derivatives.
    auto xu = [&](const CartPoint& q) {
        const double hx = fd::representable_step(q.x, h_xy);
        const double hz = fd::representable_step(q.z, h_z);
        const double dx = (u({q.x + hx, q.y, q.z}) - u({q.x - hx, q.y, q.z})) / (2.0 * hx);
        const double dz = (u({q.x, q.y, q.z + hz}) - u({q.x, q.y, q.z - hz})) / (2.0 * hz);
        return dx - 0.5 * q.y * dz;
    };
    auto yu = [&](const CartPoint& q) {
        const double hy = fd::representable_step(q.y, h_xy);
        const double hz = fd::representable_step(q.z, h_z);
        const double dy = (u({q.x, q.y + hy, q.z}) - u({q.x, q.y - hy, q.z})) / (2.0 * hy);
        const double dz = (u({q.x, q.y, q.z + hz}) - u({q.x, q.y, q.z - hz})) / (2.0 * hz);
        return dy + 0.5 * q.x * dz;
    };

    const double hx = fd::representable_step(p.x, h_xy);
    const double hy = fd::representable_step(p.y, h_xy);
    const double hz = fd::representable_step(p.z, h_z);

    const double xxu = (xu({p.x + hx, p.y, p.z}) - xu({p.x - hx, p.y, p.z})) / (2.0 * hx) -
                       0.5 * p.y * (xu({p.x, p.y, p.z + hz}) - xu({p.x, p.y, p.z - hz})) / (2.0 * hz);
    const double yyu = (yu({p.x, p.y + hy, p.z}) - yu({p.x, p.y - hy, p.z})) / (2.0 * hy) +
                       0.5 * p.x * (yu({p.x, p.y, p.z + hz}) - yu({p.x, p.y, p.z - hz})) / (2.0 * hz);
    return xxu + yyu;
}

std::pair<double, double> gauge_scaled_steps(const CartPoint& p) {
    const double rho = gauge_rho(p);
    const double c = fd::second_order_step(0.0);
    return {c * rho, c * rho * rho};
}

double sublaplacian(const ScalarField& u, const CartPoint& p, std::optional<double> h) {
    if (h) return sublaplacian(u, p, *h, *h);
    const auto [h_xy, h_z] = gauge_scaled_steps(p);
    return sublaplacian(u, p, h_xy, h_z);
}

double sublaplacian_residual(const CartPoint& p, const PotentialParams& params, std::optional<double> h) {
    // The nested stencil reaches 2h along each axis.
    const double reach = h ? 10.0 * *h : 0.0;
    if (!(gauge_rho(p) > std::max(kOriginThreshold, reach))) {
        throw Error(ErrorCode::origin_singularity, "finite-difference stencil too close to the origin");
    }
    const double k = params.k();
    auto u = [k](const CartPoint& q) {
        const double r2 = q.x * q.x + q.y * q.y;
        return -k / std::sqrt(r2 * r2 + 16.0 * q.z * q.z);
    };
    return sublaplacian(u, p, h);
}

ScalarField potential_with_z_weight(const PotentialParams& params, double z_weight) {
    const double k = params.k();
    return [k, z_weight](const CartPoint& q) {
        const double r2 = q.x * q.x + q.y * q.y;
        return -k / std::sqrt(r2 * r2 + z_weight * q.z * q.z);
    };
}

}  // namespace hkepler::potential
