// hkepler - reduced Hamiltonian, equations of motion and the almost Poisson bracket
#include "hkepler/dynamics.hpp"

#include <cmath>

#include "hkepler/finite_diff.hpp"
#include "hkepler/potential.hpp"

namespace hkepler::dynamics {

void require_admissible(const CylState& s) {
    if (!s.finite()) {
        throw Error(ErrorCode::invalid_argument, "state has non-finite components");
    }
    if (!(s.r > kAxisThreshold)) {
        throw Error(ErrorCode::axis_singularity, "state lies on the z-axis (r = 0)");
    }
    if (!(potential::gauge_rho_squared(s.r, s.z) > kOriginThreshold * kOriginThreshold)) {
        throw Error(ErrorCode::origin_singularity, "state lies at the origin");
    }
}

double kinetic_energy(const CylState& s) {
    const double transverse = s.p_s / s.r;
    return 0.5 * (s.p_r * s.p_r + transverse * transverse);
}

double hamiltonian(const CylState& s, const PotentialParams& params) {
    require_admissible(s);
    return kinetic_energy(s) - params.k() / potential::gauge_rho_squared(s.r, s.z);
}

StateDerivative vector_field_unchecked(const CylState& s, double k) {
    const double r2 = s.r * s.r;
    const double d = r2 * r2 + 16.0 * s.z * s.z;
    const double d32 = d * std::sqrt(d);
    StateDerivative out;
    out.dr = s.p_r;
    out.dtheta = s.p_s / r2;
    out.dz = 0.5 * s.p_s;
    out.dp_r = s.p_s * s.p_s / (r2 * s.r) - 2.0 * k * r2 * s.r / d32;
    out.dp_s = -8.0 * k * r2 * s.z / d32;
    return out;
}

StateDerivative vector_field(const CylState& s, const PotentialParams& params) {
    require_admissible(s);
    return vector_field_unchecked(s, params.k());
}

namespace {

struct FramePartials {
    double rf;   // R F
    double sf;   // S F
    double dpr;  // dF/dp_R
    double dps;  // dF/dp_S
};

FramePartials frame_partials(const Observable& f, const CylState& s) {
    auto fa = [&f](const std::array<double, 5>& a) { return f(CylState::from_array(a)); };
    const auto g = fd::gradient(fa, s.as_array());
    return {g[0], g[1] + 0.5 * s.r * s.r * g[2], g[3], g[4]};
}

}  // namespace

double almost_poisson(const Observable& f, const Observable& g, const CylState& s,
                      const PotentialParams&) {
    require_admissible(s);
    const FramePartials pf = frame_partials(f, s);
    const FramePartials pg = frame_partials(g, s);
    return (pg.dpr * pf.rf - pf.dpr * pg.rf) + (pg.dps * pf.sf - pf.dps * pg.sf);
}

Observable hamiltonian_observable(const PotentialParams& params) {
    return [params](const CylState& s) { return hamiltonian(s, params); };
}

Observable coordinate_observable(int index) {
    if (index < 0 || index > 4) {
        throw Error(ErrorCode::invalid_argument, "coordinate index must be in [0, 4]");
    }
    return [index](const CylState& s) { return s.as_array()[static_cast<std::size_t>(index)]; };
}

}  // namespace hkepler::dynamics
