// hkepler - invariant fourth-order surfaces and their z = 0 traces
#include "hkepler/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hkepler/potential.hpp"

namespace hkepler::surfaces {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angular_term(double r, double theta, const SurfaceSpec& spec) {
    if (spec.j == 0.0 || !spec.theta0) return 0.0;
    return spec.j * r * r * std::cos(2.0 * (theta - *spec.theta0));
}

double residual_w(double r, double theta, double w, const SurfaceSpec& spec) {
    const double r2 = r * r;
    return 8.0 * w * spec.h + spec.k * std::sqrt(r2 * r2 + 16.0 * w) - angular_term(r, theta, spec) - spec.f3;
}

double scale_w(double r, double theta, double w, const SurfaceSpec& spec) {
    const double r2 = r * r;
    return std::max({1.0, std::abs(8.0 * w * spec.h), spec.k * std::sqrt(r2 * r2 + 16.0 * w),
                     std::abs(angular_term(r, theta, spec)), spec.f3});
}

void require_case(const SurfaceSpec& spec, IntegralCase wanted, const char* what) {
    if (spec.integral_case != wanted) {
        throw Error(ErrorCode::invalid_case, std::string(what) + " requires the " +
                                                 std::string(integrals::to_string(wanted)) + " case");
    }
}

}  // namespace

SurfaceSpec make_surface_spec(const PotentialParams& params, double h, double f3, std::optional<double> theta0) {
    const double k = params.k();
    const double tol = integrals::default_case_tolerance(params);
    if (!std::isfinite(h) || !std::isfinite(f3)) {
        throw Error(ErrorCode::invalid_argument, "surface parameters must be finite");
    }
    if (f3 < -tol) throw Error(ErrorCode::inconsistent_state, "F3 must be nonnegative");
    const double j2 = k * k + 2.0 * h * std::max(f3, 0.0);
    if (j2 < -tol) throw Error(ErrorCode::inconsistent_state, "k^2 + 2 H F3 is negative");

    SurfaceSpec spec;
    spec.k = k;
    spec.h = h;
    spec.f3 = std::max(f3, 0.0);
    spec.j = std::sqrt(std::max(j2, 0.0));
    integrals::IntegralValues v;
    v.f3 = spec.f3;
    v.j = spec.j;
    spec.integral_case = integrals::classify(v, tol);
    if (spec.integral_case == IntegralCase::min_energy) {
        spec.j = 0.0;
    } else {
        if (!theta0) throw Error(ErrorCode::invalid_argument, "theta0 is required when J > 0");
        double t = std::fmod(*theta0, std::numbers::pi);
        if (t < 0.0) t += std::numbers::pi;
        spec.theta0 = t;
    }
    return spec;
}

SurfaceSpec surface_spec_from_integrals(const integrals::IntegralValues& v, const PotentialParams& params) {
    return make_surface_spec(params, v.h, v.f3, v.theta0.value_or(0.0));
}

double surface_residual(const CylPoint& p, const SurfaceSpec& spec) {
    if (spec.integral_case == IntegralCase::degenerate) {
        throw Error(ErrorCode::invalid_case, "surface_residual is undefined in the degenerate case");
    }
    return residual_w(p.r, p.theta, p.z * p.z, spec);
}

double surface_residual_scale(const CylPoint& p, const SurfaceSpec& spec) {
    return scale_w(p.r, p.theta, p.z * p.z, spec);
}

double min_energy_residual(const CylPoint& p, const SurfaceSpec& spec) {
    require_case(spec, IntegralCase::min_energy, "min_energy_residual");
    return 4.0 * spec.k * spec.k * p.z * p.z + spec.k * spec.f3 * p.r * p.r - spec.f3 * spec.f3;
}

bool DegenerateLine::contains(const CylPoint& p, double tol) const {
    if (std::abs(p.z) > tol) return false;
    if (p.r <= tol) return true;  // the origin lies on every such line
    return integrals::angle_distance_mod_pi(p.theta, theta0) <= tol;
}

DegenerateLine degenerate_locus(const SurfaceSpec& spec) {
    require_case(spec, IntegralCase::degenerate, "degenerate_locus");
    return {spec.theta0.value_or(0.0)};
}

bool HeightRoot::admissible(double tol) const {
    return sign_ok && energy_ok && std::abs(residual) <= tol * scale;
}

std::vector<HeightRoot> solve_height_squared(double r, double theta, const SurfaceSpec& spec) {
    const double k = spec.k;
    const double h = spec.h;
    const double r2 = r * r;
    const double r4 = r2 * r2;
    const double a = spec.f3 + angular_term(r, theta, spec);  // left side at w = 0
    // Squared equation: 64 H^2 w^2 - 16 (A H + k^2) w + (A^2 - k^2 r^4) = 0.
    const double c0 = (a - k * r2) * (a + k * r2);
    std::vector<double> candidates;
    if (h == 0.0) {
        candidates.push_back(c0 / (16.0 * k * k));
    } else {
        // Discriminant / (256 k^2) = k^2 + 2 A H + H^2 r^4.
        const double disc = k * k + 2.0 * a * h + h * h * r4;
        if (disc >= 0.0) {
            const double b = a * h + k * k;
            const double q = b + std::copysign(k * std::sqrt(disc), b);
            if (q != 0.0) {
                candidates.push_back(q / (8.0 * h * h));
                candidates.push_back(c0 / (8.0 * q));
            } else {
                candidates.push_back(0.0);
            }
        }
    }

    auto g = [&](double w) { return residual_w(r, theta, w, spec); };
    std::vector<HeightRoot> roots;
    for (double w : candidates) {
        if (!std::isfinite(w)) continue;
        const double scale = std::max({1.0, std::abs(w), spec.f3});
        if (w < 0.0) {
            if (w < -1e-12 * scale) continue;
            w = 0.0;
        }
        // Newton polish on the unsquared equation; keep only improvements.
        // Spurious roots of the squared equation are left alone, so they
        // cannot be dragged onto the genuine one.
        double best = w;
        double best_res = g(w);
        const bool near_root = std::abs(best_res) <= 1e-6 * scale_w(r, theta, w, spec);
        for (int it = 0; near_root && it < 4 && best_res != 0.0; ++it) {
            const double sqrt_d = std::sqrt(r4 + 16.0 * best);
            if (sqrt_d == 0.0) break;
            const double slope = 8.0 * h + 8.0 * k / sqrt_d;
            if (slope == 0.0 || !std::isfinite(slope)) break;
            const double trial = std::max(0.0, best - best_res / slope);
            const double trial_res = g(trial);
            if (!(std::abs(trial_res) < std::abs(best_res))) break;
            best = trial;
            best_res = trial_res;
        }
        HeightRoot root;
        root.w = best;
        root.residual = best_res;
        root.scale = scale_w(r, theta, best, spec);
        const double lhs = spec.f3 + angular_term(r, theta, spec) - 8.0 * best * h;
        root.sign_ok = lhs >= -1e-12 * scale;
        const double sqrt_d = std::sqrt(r4 + 16.0 * best);
        root.energy_ok = sqrt_d > 0.0 && (h + k / sqrt_d) >= -1e-12 * std::max(1.0, std::abs(h));
        roots.push_back(root);
    }
    std::sort(roots.begin(), roots.end(), [](const HeightRoot& x, const HeightRoot& y) { return x.w < y.w; });
    // A double root shows up twice; keep the copy with the smaller residual.
    std::vector<HeightRoot> unique;
    for (const auto& root : roots) {
        if (!unique.empty() && std::abs(root.w - unique.back().w) <= 1e-12 * std::max(1.0, root.w)) {
            if (std::abs(root.residual) < std::abs(unique.back().residual)) unique.back() = root;
            continue;
        }
        unique.push_back(root);
    }
    return unique;
}

SurfaceMesh sample_surface(const SurfaceSpec& spec, std::size_t n_r, std::size_t n_theta,
                           std::optional<double> r_max, double tol) {
    if (spec.integral_case == IntegralCase::degenerate) {
        throw Error(ErrorCode::invalid_case, "sample_surface needs a general or minimal-energy spec");
    }
    if (n_r < 2 || n_theta < 1) throw Error(ErrorCode::invalid_argument, "mesh needs n_r >= 2 and n_theta >= 1");

    SurfaceMesh mesh;
    mesh.n_r = n_r;
    mesh.n_theta = n_theta;
    if (spec.h < 0.0) {
        const double bounded = std::sqrt(spec.f3 / (spec.k - spec.j));
        mesh.r_max = r_max.value_or(bounded);
    } else {
        mesh.r_max = r_max.value_or(5.0 * std::sqrt(spec.f3 / spec.k));
        mesh.clipped = true;
    }
    if (!(mesh.r_max > 0.0)) throw Error(ErrorCode::invalid_argument, "r_max must be positive");

    const double theta_start = spec.theta0.value_or(0.0);
    for (std::size_t jt = 0; jt < n_theta; ++jt) {
        const double theta = theta_start + kTwoPi * static_cast<double>(jt) / static_cast<double>(n_theta);
        for (std::size_t ir = 0; ir < n_r; ++ir) {
            const double r = mesh.r_max * static_cast<double>(ir) / static_cast<double>(n_r - 1);
            int index = 0;
            bool any = false;
            for (const auto& root : solve_height_squared(r, theta, spec)) {
                if (!root.admissible(tol)) continue;
                any = true;
                ++index;
                const double z = std::sqrt(root.w);
                if (z == 0.0) {
                    mesh.points.push_back({r, theta, 0.0, 0});
                } else {
                    mesh.points.push_back({r, theta, z, index});
                    mesh.points.push_back({r, theta, -z, -index});
                }
            }
            if (!any) ++mesh.empty_cells;
        }
        // Rim of the column on z = 0: r^2 (k - J cos 2(theta - theta0)) = F3.
        const double denom = spec.k - angular_term(1.0, theta, spec);
        if (denom > 0.0) {
            const double rim = std::sqrt(spec.f3 / denom);
            if (rim <= mesh.r_max && std::abs(residual_w(rim, theta, 0.0, spec)) <= tol * scale_w(rim, theta, 0.0, spec)) {
                mesh.points.push_back({rim, theta, 0.0, 0});
            }
        }
    }
    return mesh;
}

std::string_view to_string(ConicKind kind) {
    switch (kind) {
        case ConicKind::ellipse: return "ellipse";
        case ConicKind::parallel_lines: return "parallel_lines";
        case ConicKind::hyperbola: return "hyperbola";
    }
    return "unknown";
}

TraceConic trace_conic(const SurfaceSpec& spec) {
    if (spec.integral_case == IntegralCase::degenerate) {
        throw Error(ErrorCode::invalid_case, "the degenerate case has no trace conic");
    }
    TraceConic c;
    c.theta0 = spec.theta0.value_or(0.0);
    c.k = spec.k;
    c.j = spec.j;
    c.f3 = spec.f3;
    const double gap = spec.k - spec.j;
    if (std::abs(gap) <= 1e-12 * spec.k) {
        c.kind = ConicKind::parallel_lines;
        c.semi_axis_across = std::sqrt(spec.f3 / (2.0 * spec.k));
    } else if (gap > 0.0) {
        c.kind = ConicKind::ellipse;
        c.semi_axis_along = std::sqrt(spec.f3 / gap);
        c.semi_axis_across = std::sqrt(spec.f3 / (spec.k + spec.j));
    } else {
        c.kind = ConicKind::hyperbola;
        c.semi_axis_across = std::sqrt(spec.f3 / (spec.k + spec.j));
        c.semi_axis_along = std::sqrt(spec.f3 / -gap);
    }
    return c;
}

double conic_residual(const TraceConic& conic, double x, double y) {
    const double c = std::cos(conic.theta0);
    const double s = std::sin(conic.theta0);
    const double u = x * c + y * s;
    const double v = -x * s + y * c;
    return (conic.k - conic.j) * u * u + (conic.k + conic.j) * v * v - conic.f3;
}

Polynomial<3> cartesian_quartic(const SurfaceSpec& spec) {
    require_case(spec, IntegralCase::general, "cartesian_quartic");
    using P = Polynomial<3>;
    const P x = P::variable(0);
    const P y = P::variable(1);
    const P w = P::variable(2);
    const double t0 = *spec.theta0;
    const double c2 = std::cos(2.0 * t0);
    const double s2 = std::sin(2.0 * t0);
    // Snap the trigonometric factors that are exactly zero in exact arithmetic.
    const double cc = std::abs(c2) < 1e-15 ? 0.0 : c2;
    const double ss = std::abs(s2) < 1e-15 ? 0.0 : s2;
    const P rho2 = x * x + y * y;
    const P lhs = (spec.k * spec.k) * (rho2 * rho2 + 16.0 * w);
    const P inner = P::constant(spec.f3) - (8.0 * spec.h) * w +
                    spec.j * (cc * (x * x - y * y) + (2.0 * ss) * (x * y));
    return lhs - inner * inner;
}

}  // namespace hkepler::surfaces
