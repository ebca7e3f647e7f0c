// hkepler - invariant fourth-order surfaces and their z = 0 traces
#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "hkepler/integrals.hpp"
#include "hkepler/polynomial.hpp"
#include "hkepler/types.hpp"

namespace hkepler::surfaces {

using integrals::IntegralCase;

/// Parameters of one invariant surface. J = sqrt(k^2 + 2 H F3).
struct SurfaceSpec {
    double k{1.0};
    double h{0.0};
    double f3{0.0};
    std::optional<double> theta0;
    double j{0.0};
    IntegralCase integral_case{IntegralCase::general};
};

/// Builds a spec from (H, F3, theta0). Throws inconsistent_state when
/// F3 < 0 or k^2 + 2 H F3 < 0, and invalid_argument when theta0 is missing
/// for a case that needs it.
SurfaceSpec make_surface_spec(const PotentialParams& params, double h, double f3,
                              std::optional<double> theta0);

/// Spec of the surface carrying a trajectory with the given integrals.
SurfaceSpec surface_spec_from_integrals(const integrals::IntegralValues& v, const PotentialParams& params);

/// 8 z^2 H + k sqrt(r^4 + 16 z^2) - J r^2 cos(2 (theta - theta0)) - F3.
/// For J = 0 the angular term drops out and the expression is the
/// minimal-energy surface before squaring. Throws invalid_case for the
/// degenerate case.
double surface_residual(const CylPoint& p, const SurfaceSpec& spec);

/// Magnitude of the terms in surface_residual, at least 1; dividing by it
/// gives a residual relative to the cancelling terms.
double surface_residual_scale(const CylPoint& p, const SurfaceSpec& spec);

/// 4 k^2 z^2 + k F3 r^2 - F3^2 (ellipsoid of revolution). MinEnergy only.
double min_energy_residual(const CylPoint& p, const SurfaceSpec& spec);

/// The F3 = 0 invariant set: the horizontal line z = 0, theta = theta0 mod pi.
struct DegenerateLine {
    double theta0{0.0};

    /// |z| <= tol and theta within tol of theta0 modulo pi.
    [[nodiscard]] bool contains(const CylPoint& p, double tol) const;
};

DegenerateLine degenerate_locus(const SurfaceSpec& spec);

/// One nonnegative root w = z^2 of the squared surface equation at (r, theta).
struct HeightRoot {
    double w{0.0};
    double residual{0.0};     // unsquared surface residual at z = sqrt(w)
    double scale{1.0};        // surface_residual_scale at the root
    bool sign_ok{false};      // F3 - 8 w H + J r^2 cos(...) >= 0
    bool energy_ok{false};    // H + k / sqrt(r^4 + 16 w) >= 0
    /// sign_ok, energy_ok and |residual| <= tol * scale.
    [[nodiscard]] bool admissible(double tol) const;
};

/// All nonnegative roots in z^2 of the squared equation, polished on the
/// unsquared one. Quadratic when H != 0, linear when H == 0.
std::vector<HeightRoot> solve_height_squared(double r, double theta, const SurfaceSpec& spec);

struct MeshPoint {
    double r{0.0};
    double theta{0.0};
    double z{0.0};
    /// +n / -n for the upper / lower sheet of the n-th admissible root, 0 on z = 0.
    int branch{0};
};

struct SurfaceMesh {
    std::vector<MeshPoint> points;
    std::size_t n_r{0};
    std::size_t n_theta{0};
    double r_max{0.0};
    std::size_t empty_cells{0};
    /// True when the surface is unbounded and the grid was cut at r_max.
    bool clipped{false};
};

/// Per-node root solving on an (r, theta)-uniform grid, plus the z = 0 rim
/// point of each theta column. Only roots that solve the unsquared equation
/// and are reachable with energy H are kept. r_max defaults to the trace
/// major semiaxis for H < 0 and to 5 sqrt(F3 / k) otherwise.
SurfaceMesh sample_surface(const SurfaceSpec& spec, std::size_t n_r, std::size_t n_theta,
                           std::optional<double> r_max = std::nullopt, double tol = 1e-9);

enum class ConicKind { ellipse, parallel_lines, hyperbola };

std::string_view to_string(ConicKind kind);

/// Trace on z = 0 in coordinates (u, v) rotated by theta0:
///   (k - J) u^2 + (k + J) v^2 = F3.
struct TraceConic {
    ConicKind kind{ConicKind::ellipse};
    double theta0{0.0};
    double k{1.0};
    double j{0.0};
    double f3{0.0};
    /// Ellipse: semiaxis along theta0. Hyperbola: conjugate semiaxis.
    std::optional<double> semi_axis_along;
    /// Ellipse: semiaxis across theta0. Hyperbola: transverse semiaxis.
    /// Parallel lines: distance of each line from the origin.
    std::optional<double> semi_axis_across;
};

TraceConic trace_conic(const SurfaceSpec& spec);

/// (k - J) u^2 + (k + J) v^2 - F3 at the Cartesian point (x, y).
double conic_residual(const TraceConic& conic, double x, double y);

/// The squared surface equation as a polynomial in (x, y, w = z^2):
///   k^2 ((x^2 + y^2)^2 + 16 w) - (F3 - 8 w H + J (cos 2t0 (x^2 - y^2) + 2 sin 2t0 x y))^2.
/// General case only.
Polynomial<3> cartesian_quartic(const SurfaceSpec& spec);

}  // namespace hkepler::surfaces
