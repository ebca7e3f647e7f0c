// hkepler - reduced Hamiltonian, equations of motion and the almost Poisson bracket
#pragma once

#include <functional>

#include "hkepler/types.hpp"

namespace hkepler::dynamics {

/// Time derivative of a CylState.
struct StateDerivative {
    double dr{0.0};
    double dtheta{0.0};
    double dz{0.0};
    double dp_r{0.0};
    double dp_s{0.0};

    [[nodiscard]] std::array<double, 5> as_array() const { return {dr, dtheta, dz, dp_r, dp_s}; }
};

/// A real-valued function of the phase point. Any parameters (such as k)
/// are captured by the callable; it must not carry mutable state.
using Observable = std::function<double(const CylState&)>;

/// Throws axis_singularity for r <= kAxisThreshold and origin_singularity
/// for sqrt(r^4 + 16 z^2) <= kOriginThreshold^2.
void require_admissible(const CylState& s);

/// H = (p_R^2 + p_S^2 / r^2) / 2 - k / sqrt(r^4 + 16 z^2).
double hamiltonian(const CylState& s, const PotentialParams& params);

/// Kinetic part (p_R^2 + p_S^2 / r^2) / 2.
double kinetic_energy(const CylState& s);

/// The generalized Hamiltonian equations in the frame (R, S):
///   r' = p_R, theta' = p_S / r^2, z' = p_S / 2,
///   p_R' = p_S^2 / r^3 - 2 k r^3 / D^(3/2),  p_S' = -8 k r^2 z / D^(3/2),
/// with D = r^4 + 16 z^2. The constraint z' = (r^2/2) theta' is built in.
StateDerivative vector_field(const CylState& s, const PotentialParams& params);

/// Unchecked vector field for the integrator's inner loop. Caller guarantees
/// the state is admissible.
StateDerivative vector_field_unchecked(const CylState& s, double k);

/// Almost Poisson bracket
///   {F, G} = sum_i (dG/dp_i X_i F - dF/dp_i X_i G),
/// over the frame R F = dF/dr, S F = dF/dtheta + (r^2/2) dF/dz. All partials are
/// central differences. {F, H} is the time derivative of F along the flow.
double almost_poisson(const Observable& f, const Observable& g, const CylState& s,
                      const PotentialParams& params);

/// H as an Observable bound to params.
Observable hamiltonian_observable(const PotentialParams& params);

/// Coordinate projections, convenient for bracket checks.
Observable coordinate_observable(int index);

}  // namespace hkepler::dynamics
