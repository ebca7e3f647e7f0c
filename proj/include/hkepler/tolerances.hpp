// hkepler - the global tolerance profile shared by verify, recipes and tests
#pragma once

#include <string_view>

namespace hkepler {

/// Named thresholds. Recipes may override individual fields; every report
/// records the profile it ran with.
struct ToleranceProfile {
    static constexpr std::string_view version{"1"};

    double fd_tol{1e-5};         // finite-difference PDE residuals
    double drift_tol{1e-6};      // integral drift along a trajectory
    double identity_tol{1e-9};   // algebraic identities, relative to k^2
    double mesh_tol{1e-9};       // mesh points against the unsquared surface equation
    double bracket_tol{1e-6};    // brackets and dF/dt of the integrals
    double harmonic_tol{1e-4};   // relative sub-Laplacian residual of U
    double probe_floor{1e-2};    // linear probe must stay above this
    double probe_control{1e-6};  // quadratic control must fall below this
    double shadow_tol{1e-5};     // numeric vs closed-form special solutions

    /// Throws invalid_argument unless every field is positive and finite.
    void validate() const;
};

}  // namespace hkepler
