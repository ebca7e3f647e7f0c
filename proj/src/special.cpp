// hkepler - closed-form special solutions
#include "hkepler/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hkepler::special {

std::array<StationaryPoint, 2> stationary_points(const PotentialParams& params, double h) {
    if (!(h < 0.0)) {
        throw Error(ErrorCode::no_stationary_solution, "stationary solutions exist only for H < 0");
    }
    const double k = params.k();
    const double z = k / (4.0 * std::abs(h));
    auto make = [k](double zz) {
        StationaryPoint p;
        p.z = zz;
        const double sqrt16z2 = std::sqrt(16.0 * zz * zz);
        p.h = -k / sqrt16z2;
        p.f3 = 8.0 * k * zz * zz / sqrt16z2;
        p.j_squared = k * k + 2.0 * p.h * p.f3;
        return p;
    };
    return {make(z), make(-z)};
}

HeteroclinicCurve heteroclinic_curve(const PotentialParams& params, double h, double theta_at_0) {
    if (!(h < 0.0)) {
        throw Error(ErrorCode::no_stationary_solution, "heteroclinic curves need H < 0");
    }
    return {params.k(), params.k() / (4.0 * std::abs(h)), theta_at_0};
}

namespace {

void require_inside(const HeteroclinicCurve& curve, double z) {
    if (!(curve.z0 > 0.0) || !(curve.k > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "heteroclinic curve needs k > 0 and z0 > 0");
    }
    if (!(std::abs(z) < curve.z0)) {
        throw Error(ErrorCode::out_of_range, "height must satisfy |z| < z0");
    }
}

}  // namespace

HeteroclinicPoint heteroclinic_point(const HeteroclinicCurve& curve, double z) {
    require_inside(curve, z);
    const double z0 = curve.z0;
    const double gap = (z0 - z) * (z0 + z);
    const double r = std::sqrt(2.0 * gap / z0);
    const double theta = 0.5 * std::log((z0 + z) / (z0 - z)) + curve.theta_at_0;
    const double z_dot = std::sqrt(curve.k) * gap / (2.0 * (z0 * z0 + z * z));
    const double r_dot = -2.0 * z * z_dot / (z0 * r);
    return {{r, theta, z, r_dot, 2.0 * z_dot}, z_dot};
}

double heteroclinic_time(const HeteroclinicCurve& curve, double z1) {
    require_inside(curve, z1);
    const double z0 = curve.z0;
    return 2.0 / std::sqrt(curve.k) * (z0 * std::log((z0 + z1) / (z0 - z1)) - z1);
}

double heteroclinic_time_quadrature(const HeteroclinicCurve& curve, double z1) {
    require_inside(curve, z1);
    const double z0 = curve.z0;
    const double sqrt_k = std::sqrt(curve.k);
    auto inverse_speed = [=](double z) { return 2.0 * (z0 * z0 + z * z) / (sqrt_k * (z0 - z) * (z0 + z)); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inverse_speed, 0.0, z1, 20, 1e-14);
}

double RadialSolution::radius_at(double t) const {
    const double r2 = r0 * r0 + 2.0 * r0 * p_r0 * t + 2.0 * h * t * t;
    return std::sqrt(std::max(r2, 0.0));
}

double RadialSolution::p_r_at(double t) const {
    const double r = radius_at(t);
    if (r == 0.0) return std::copysign(std::numeric_limits<double>::infinity(), p_r0 + 2.0 * h * t);
    return (r0 * p_r0 + 2.0 * h * t) / r;
}

double RadialSolution::time_to_radius(double r) const {
    const double sign = p_r0 >= 0.0 ? 1.0 : -1.0;
    if (h == 0.0) return sign * (r * r - r0 * r0) / (2.0 * std::sqrt(2.0 * k));
    const double now = std::sqrt(std::max(0.0, 2.0 * (h * r * r + k)));
    const double start = std::sqrt(std::max(0.0, 2.0 * (h * r0 * r0 + k)));
    return sign * (now - start) / (2.0 * h);
}

CylState RadialSolution::state_at(double t) const { return {radius_at(t), theta, 0.0, p_r_at(t), 0.0}; }

RadialSolution radial_solution(const PotentialParams& params, double h, double r0, bool outgoing, double theta) {
    if (!(r0 > 0.0)) throw Error(ErrorCode::invalid_argument, "r0 must be positive");
    const double k = params.k();
    const double speed2 = 2.0 * (h + k / (r0 * r0));
    if (speed2 < -1e-12 * std::max(1.0, k / (r0 * r0))) {
        throw Error(ErrorCode::inconsistent_state, "r0 lies beyond the turning radius for this energy");
    }
    RadialSolution sol;
    sol.k = k;
    sol.h = h;
    sol.theta = theta;
    sol.r0 = r0;
    sol.p_r0 = (outgoing ? 1.0 : -1.0) * std::sqrt(std::max(speed2, 0.0));

    const double a = r0 * sol.p_r0;
    if (h < 0.0) {
        sol.turning_radius = std::sqrt(k / std::abs(h));
        if (sol.p_r0 >= 0.0) sol.turning_time = a / (2.0 * std::abs(h));
    }
    // Roots of 2 H t^2 + 2 a t + r0^2; the discriminant a^2 - 2 H r0^2 equals 2k.
    if (h == 0.0) {
        if (a < 0.0) sol.collision_time = -r0 * r0 / (2.0 * a);
    } else {
        const double sq = std::sqrt(2.0 * k);
        const double t1 = (-a + sq) / (2.0 * h);
        const double t2 = (-a - sq) / (2.0 * h);
        double best = std::numeric_limits<double>::infinity();
        for (double tc : {t1, t2}) {
            if (tc > 0.0) best = std::min(best, tc);
        }
        if (std::isfinite(best)) sol.collision_time = best;
    }
    return sol;
}

}  // namespace hkepler::special
