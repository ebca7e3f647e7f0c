// hkepler - closed-form first integrals and their classification
#pragma once

#include <optional>
#include <string_view>

#include "hkepler/dynamics.hpp"
#include "hkepler/types.hpp"

namespace hkepler::integrals {

/// Which of the three invariant-surface families a trajectory belongs to.
enum class IntegralCase {
    general,     // F3 > 0, J > 0
    min_energy,  // F3 > 0, J = 0
    degenerate,  // F3 = 0
};

std::string_view to_string(IntegralCase c);

/// The conserved fingerprint of a trajectory. F1 = J sin(2 theta0),
/// F2 = J cos(2 theta0); theta0 in [0, pi) exists only when J > 0.
struct IntegralValues {
    double h{0.0};
    double f1{0.0};
    double f2{0.0};
    double f3{0.0};
    double j{0.0};
    std::optional<double> theta0;
    IntegralCase integral_case{IntegralCase::general};
};

/// Default classification tolerance 1e-9 * max(1, k^2).
double default_case_tolerance(const PotentialParams& params);

// Individual integrals. Each requires an admissible state.
double f1(const CylState& s, const PotentialParams& params);
double f2(const CylState& s, const PotentialParams& params);
/// Expanded form 4z^2 p_R^2 - 4 r z p_R p_S + (r^4 + 4z^2)/r^2 p_S^2 + 8 k z^2 / sqrt(D).
double f3(const CylState& s, const PotentialParams& params);
/// Compact form (2 z p_R - r p_S)^2 + 4 z^2 (p_S^2 / r^2 + 2k / sqrt(D)).
double f3_compact(const CylState& s, const PotentialParams& params);

/// Evaluates H, F1, F2, F3, derives J and theta0 and classifies with tol
/// (default_case_tolerance when empty).
IntegralValues evaluate_integrals(const CylState& s, const PotentialParams& params,
                                  std::optional<double> tol = std::nullopt);

/// F1^2 + F2^2 - 2 H F3 - k^2; vanishes identically on phase space.
double relation_residual(const IntegralValues& v, const PotentialParams& params);

/// Degenerate if F3 <= tol, MinEnergy if J <= tol, otherwise General.
IntegralCase classify(const IntegralValues& v, double tol);

/// 1/2 atan2(f1, f2) mapped into [0, pi).
double phase_offset(double f1_value, double f2_value);

/// Distance between two angles modulo pi, in [0, pi/2].
double angle_distance_mod_pi(double a, double b);

// Observables bound to params, for brackets and residual checks.
dynamics::Observable f1_observable(const PotentialParams& params);
dynamics::Observable f2_observable(const PotentialParams& params);
dynamics::Observable f3_observable(const PotentialParams& params);

}  // namespace hkepler::integrals
