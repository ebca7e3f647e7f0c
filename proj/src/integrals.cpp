// hkepler - closed-form first integrals and their classification
#include "hkepler/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hkepler/potential.hpp"

namespace hkepler::integrals {

std::string_view to_string(IntegralCase c) {
    switch (c) {
        case IntegralCase::general: return "general";
        case IntegralCase::min_energy: return "min_energy";
        case IntegralCase::degenerate: return "degenerate";
    }
    return "unknown";
}

double default_case_tolerance(const PotentialParams& params) {
    return 1e-9 * std::max(1.0, params.k() * params.k());
}

namespace {

// The two momentum-dependent groupings shared by F1 and F2:
//   A = p_R p_S r - 2 p_R^2 z + 2 p_S^2 z / r^2
//   B = 4 p_R p_S z / r - p_S^2 + k r^2 / sqrt(D)
struct Groupings {
    double a;
    double b;
};

Groupings groupings(const CylState& s, double k) {
    const double r2 = s.r * s.r;
    const double sqrt_d = potential::gauge_rho_squared(s.r, s.z);
    return {s.p_r * s.p_s * s.r - 2.0 * s.p_r * s.p_r * s.z + 2.0 * s.p_s * s.p_s * s.z / r2,
            4.0 * s.p_r * s.p_s * s.z / s.r - s.p_s * s.p_s + k * r2 / sqrt_d};
}

}  // namespace

double f1(const CylState& s, const PotentialParams& params) {
    dynamics::require_admissible(s);
    const auto [a, b] = groupings(s, params.k());
    return a * std::cos(2.0 * s.theta) + b * std::sin(2.0 * s.theta);
}

double f2(const CylState& s, const PotentialParams& params) {
    dynamics::require_admissible(s);
    const auto [a, b] = groupings(s, params.k());
    return -a * std::sin(2.0 * s.theta) + b * std::cos(2.0 * s.theta);
}

double f3(const CylState& s, const PotentialParams& params) {
    dynamics::require_admissible(s);
    const double r2 = s.r * s.r;
    const double z2 = s.z * s.z;
    return 4.0 * z2 * s.p_r * s.p_r - 4.0 * s.r * s.z * s.p_r * s.p_s +
           (r2 * r2 + 4.0 * z2) / r2 * s.p_s * s.p_s +
           8.0 * params.k() * z2 / potential::gauge_rho_squared(s.r, s.z);
}

double f3_compact(const CylState& s, const PotentialParams& params) {
    dynamics::require_admissible(s);
    const double lead = 2.0 * s.z * s.p_r - s.r * s.p_s;
    const double transverse = s.p_s / s.r;
    return lead * lead + 4.0 * s.z * s.z *
                             (transverse * transverse +
                              2.0 * params.k() / potential::gauge_rho_squared(s.r, s.z));
}

double phase_offset(double f1_value, double f2_value) {
    double theta0 = 0.5 * std::atan2(f1_value, f2_value);
    if (theta0 < 0.0) theta0 += std::numbers::pi;
    // atan2 can return exactly pi, which would map onto the excluded endpoint.
    if (theta0 >= std::numbers::pi) theta0 -= std::numbers::pi;
    return theta0;
}

double angle_distance_mod_pi(double a, double b) {
    double d = std::fmod(a - b, std::numbers::pi);
    if (d < 0.0) d += std::numbers::pi;
    return std::min(d, std::numbers::pi - d);
}

IntegralCase classify(const IntegralValues& v, double tol) {
    if (v.f3 <= tol) return IntegralCase::degenerate;
    if (v.j <= tol) return IntegralCase::min_energy;
    return IntegralCase::general;
}

IntegralValues evaluate_integrals(const CylState& s, const PotentialParams& params,
                                  std::optional<double> tol) {
    dynamics::require_admissible(s);
    IntegralValues v;
    v.h = dynamics::hamiltonian(s, params);
    v.f1 = f1(s, params);
    v.f2 = f2(s, params);
    v.f3 = f3(s, params);
    v.j = std::hypot(v.f1, v.f2);
    if (v.j > 0.0) v.theta0 = phase_offset(v.f1, v.f2);
    v.integral_case = classify(v, tol.value_or(default_case_tolerance(params)));
    return v;
}

double relation_residual(const IntegralValues& v, const PotentialParams& params) {
    return v.f1 * v.f1 + v.f2 * v.f2 - 2.0 * v.h * v.f3 - params.k() * params.k();
}

dynamics::Observable f1_observable(const PotentialParams& params) {
    return [params](const CylState& s) { return f1(s, params); };
}

dynamics::Observable f2_observable(const PotentialParams& params) {
    return [params](const CylState& s) { return f2(s, params); };
}

dynamics::Observable f3_observable(const PotentialParams& params) {
    return [params](const CylState& s) { return f3(s, params); };
}

}  // namespace hkepler::integrals
