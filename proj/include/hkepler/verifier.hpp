// hkepler - numeric certificates for first integrals quadratic in momenta
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hkepler/dynamics.hpp"
#include "hkepler/integrator.hpp"
#include "hkepler/types.hpp"

namespace hkepler::verifier {

/// dF/dt along the flow written out coordinate by coordinate:
///   F_r p_R + F_theta p_S / r^2 + F_z p_S / 2
///   + F_{p_R} (p_S^2 / r^3 - 2 k r^3 / D^(3/2)) - F_{p_S} 8 k r^2 z / D^(3/2),
/// with central-difference partials. Vanishes iff F is conserved at s.
double integral_residual(const dynamics::Observable& f, const CylState& s, const PotentialParams& params);

using CoefficientFn = std::function<double(const CylPoint&)>;

/// F = a p_R^2 + d p_R p_S + b p_S^2 + h with position-dependent coefficients.
struct QuadraticCandidate {
    CoefficientFn a;
    CoefficientFn d;
    CoefficientFn b;
    CoefficientFn h;

    [[nodiscard]] double operator()(const CylState& s) const;
    [[nodiscard]] dynamics::Observable observable() const;
};

struct AppendixConstants {
    double c2{0.0};
    double c3{0.0};
    double c4{0.0};
};

/// Coefficients of c2 F1 + c3 F2 + c4 F3 in the quadratic form above.
QuadraticCandidate tilde_coefficients(const AppendixConstants& c, const PotentialParams& params);

/// Residuals of the six coefficient equations obtained by splitting dF/dt = 0
/// by momentum monomials (p_R^3, p_R^2 p_S, p_R p_S^2, p_S^3, p_R, p_S):
///   a_r
///   2 a_theta + r^2 (a_z + 2 d_r)
///   4 a + r^3 d_z + 2 r (d_theta + r^2 b_r)
///   2 d + r^3 b_z + 2 r b_theta
///   2 r^3 D^(3/2) h_r - 8 k r^6 a - 16 k r^5 z d
///   r D^(3/2) (r^2 h_z + 2 h_theta) - 4 k r^6 d - 32 k r^5 z b
/// Throws axis/origin singularity errors near the singular set.
std::array<double, 6> pde_residuals(const QuadraticCandidate& cand, const CylPoint& p, const PotentialParams& params);

/// Function space searched by linear_probe: momentum monomials
/// p_R^i p_S^j (i + j <= momentum_order) times r^a z^b cos/sin(m theta) with
/// min_r_power <= a, b >= 0, a + b <= spatial_degree, m <= fourier_modes.
/// With gauge_terms the momentum-free part also carries those spatial
/// functions divided by sqrt(r^4 + 16 z^2).
struct ProbeBasis {
    int momentum_order{1};
    int spatial_degree{4};
    int fourier_modes{2};
    int min_r_power{-2};
    bool gauge_terms{true};
};

struct ProbeResult {
    /// min over the basis span of (variance along trajectories) / (variance
    /// over the whole ensemble).
    double normalized_residual{1.0};
    std::size_t basis_size{0};
    std::size_t effective_rank{0};
    std::size_t samples{0};
    std::size_t trajectories{0};
    std::size_t distinct_fingerprints{0};
    /// Set when the ensemble is too small for the ratio to mean anything.
    bool flagged{false};
    std::string note;
};

/// Least-squares search for a conserved function within the basis, over an
/// ensemble of trajectories. A value bounded away from zero is evidence, not
/// proof, that no conserved function exists in that space. Throws
/// invalid_ensemble when the ensemble is empty or all fingerprints coincide.
ProbeResult linear_probe(const PotentialParams& params, const std::vector<integrator::Trajectory>& ensemble,
                         const ProbeBasis& basis);

}  // namespace hkepler::verifier
