// hkepler - numeric certificates for first integrals quadratic in momenta
#include "hkepler/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "hkepler/finite_diff.hpp"
#include "hkepler/potential.hpp"

namespace hkepler::verifier {

double integral_residual(const dynamics::Observable& f, const CylState& s, const PotentialParams& params) {
    dynamics::require_admissible(s);
    auto fa = [&f](const std::array<double, 5>& a) { return f(CylState::from_array(a)); };
    const auto g = fd::gradient(fa, s.as_array());
    const double k = params.k();
    const double r2 = s.r * s.r;
    const double d = r2 * r2 + 16.0 * s.z * s.z;
    const double d32 = d * std::sqrt(d);
    return g[0] * s.p_r + g[1] * s.p_s / r2 + g[2] * s.p_s / 2.0 +
           g[3] * (s.p_s * s.p_s / (r2 * s.r) - 2.0 * k * r2 * s.r / d32) - g[4] * 8.0 * k * r2 * s.z / d32;
}

double QuadraticCandidate::operator()(const CylState& s) const {
    const CylPoint p = s.position();
    return a(p) * s.p_r * s.p_r + d(p) * s.p_r * s.p_s + b(p) * s.p_s * s.p_s + h(p);
}

dynamics::Observable QuadraticCandidate::observable() const {
    return [cand = *this](const CylState& s) { return cand(s); };
}

QuadraticCandidate tilde_coefficients(const AppendixConstants& c, const PotentialParams& params) {
    const double k = params.k();
    QuadraticCandidate q;
    q.a = [c](const CylPoint& p) {
        return 2.0 * p.z * (2.0 * c.c4 * p.z - c.c2 * std::cos(2.0 * p.theta) + c.c3 * std::sin(2.0 * p.theta));
    };
    // The printed coefficient has "c3 x" in the sin term; r is meant.
    q.d = [c](const CylPoint& p) {
        return (c.c2 * p.r + 4.0 * c.c3 * p.z / p.r) * std::cos(2.0 * p.theta) -
               (c.c3 * p.r - 4.0 * c.c2 * p.z / p.r) * std::sin(2.0 * p.theta) - 4.0 * c.c4 * p.r * p.z;
    };
    q.b = [c](const CylPoint& p) {
        const double r2 = p.r * p.r;
        return ((-c.c3 * r2 + 2.0 * c.c2 * p.z) * std::cos(2.0 * p.theta) -
                (c.c2 * r2 + 2.0 * c.c3 * p.z) * std::sin(2.0 * p.theta) + c.c4 * (r2 * r2 + 4.0 * p.z * p.z)) /
               r2;
    };
    q.h = [c, k](const CylPoint& p) {
        const double r2 = p.r * p.r;
        return k / potential::gauge_rho_squared(p.r, p.z) *
               (r2 * (c.c3 * std::cos(2.0 * p.theta) + c.c2 * std::sin(2.0 * p.theta)) + 8.0 * c.c4 * p.z * p.z);
    };
    return q;
}

namespace {

struct Partials {
    double value, dr, dtheta, dz;
};

Partials partials(const CoefficientFn& f, const CylPoint& p) {
    return {f(p),
            fd::central([&](double v) { return f({v, p.theta, p.z}); }, p.r, fd::first_order_step(p.r)),
            fd::central([&](double v) { return f({p.r, v, p.z}); }, p.theta, fd::first_order_step(p.theta)),
            fd::central([&](double v) { return f({p.r, p.theta, v}); }, p.z, fd::first_order_step(p.z))};
}

}  // namespace

std::array<double, 6> pde_residuals(const QuadraticCandidate& cand, const CylPoint& p, const PotentialParams& params) {
    dynamics::require_admissible({p.r, p.theta, p.z, 0.0, 0.0});
    const Partials a = partials(cand.a, p);
    const Partials d = partials(cand.d, p);
    const Partials b = partials(cand.b, p);
    const Partials h = partials(cand.h, p);
    const double k = params.k();
    const double r = p.r;
    const double z = p.z;
    const double r2 = r * r;
    const double r3 = r2 * r;
    const double r5 = r3 * r2;
    const double r6 = r3 * r3;
    const double dd = r2 * r2 + 16.0 * z * z;
    const double d32 = dd * std::sqrt(dd);
    return {
        a.dr,
        2.0 * a.dtheta + r2 * (a.dz + 2.0 * d.dr),
        4.0 * a.value + r3 * d.dz + 2.0 * r * (d.dtheta + r2 * b.dr),
        2.0 * d.value + r3 * b.dz + 2.0 * r * b.dtheta,
        2.0 * r3 * d32 * h.dr - 8.0 * k * r6 * a.value - 16.0 * k * r5 * z * d.value,
        r * d32 * (r2 * h.dz + 2.0 * h.dtheta) - 4.0 * k * r6 * d.value - 32.0 * k * r5 * z * b.value,
    };
}

namespace {

struct SpatialTerm {
    int r_power;
    int z_power;
    int mode;     // Fourier index m
    bool sine;    // sin(m theta) instead of cos
    bool gauge;   // divided by sqrt(r^4 + 16 z^2)
};

std::vector<SpatialTerm> spatial_terms(const ProbeBasis& basis, bool gauge) {
    std::vector<SpatialTerm> out;
    for (int zp = 0; zp <= basis.spatial_degree; ++zp) {
        for (int rp = basis.min_r_power; rp + zp <= basis.spatial_degree; ++rp) {
            for (int m = 0; m <= basis.fourier_modes; ++m) {
                out.push_back({rp, zp, m, false, gauge});
                if (m > 0) out.push_back({rp, zp, m, true, gauge});
            }
        }
    }
    return out;
}

double eval_spatial(const SpatialTerm& t, const CylState& s) {
    double v = std::pow(s.r, t.r_power) * std::pow(s.z, t.z_power);
    if (t.mode > 0) v *= t.sine ? std::sin(t.mode * s.theta) : std::cos(t.mode * s.theta);
    if (t.gauge) v /= potential::gauge_rho_squared(s.r, s.z);
    return v;
}

struct BasisFunction {
    int pr_power;
    int ps_power;
    SpatialTerm spatial;
};

std::vector<BasisFunction> build_basis(const ProbeBasis& basis) {
    std::vector<BasisFunction> out;
    const auto plain = spatial_terms(basis, false);
    for (int total = 0; total <= basis.momentum_order; ++total) {
        for (int i = total; i >= 0; --i) {
            for (const auto& t : plain) out.push_back({i, total - i, t});
        }
    }
    if (basis.gauge_terms) {
        for (const auto& t : spatial_terms(basis, true)) out.push_back({0, 0, t});
    }
    return out;
}

bool same_fingerprint(const integrals::IntegralValues& a, const integrals::IntegralValues& b) {
    auto close = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)}); };
    return close(a.h, b.h) && close(a.f1, b.f1) && close(a.f2, b.f2) && close(a.f3, b.f3);
}

}  // namespace

ProbeResult linear_probe(const PotentialParams& params, const std::vector<integrator::Trajectory>& ensemble,
                         const ProbeBasis& basis) {
    (void)params;
    if (ensemble.empty()) throw Error(ErrorCode::invalid_ensemble, "ensemble is empty");
    if (basis.momentum_order < 0 || basis.spatial_degree < 0 || basis.fourier_modes < 0) {
        throw Error(ErrorCode::invalid_argument, "probe basis orders must be nonnegative");
    }

    ProbeResult res;
    res.trajectories = ensemble.size();
    std::vector<const integrals::IntegralValues*> distinct;
    for (const auto& tr : ensemble) {
        if (tr.samples.empty()) throw Error(ErrorCode::invalid_ensemble, "trajectory without samples");
        const auto& fp = tr.integrals_at_start;
        if (std::none_of(distinct.begin(), distinct.end(), [&](auto* d) { return same_fingerprint(*d, fp); })) {
            distinct.push_back(&fp);
        }
        res.samples += tr.samples.size();
    }
    res.distinct_fingerprints = distinct.size();
    if (ensemble.size() > 1 && distinct.size() == 1) {
        throw Error(ErrorCode::invalid_ensemble, "all trajectories share one fingerprint");
    }
    if (distinct.size() < 5) {
        res.flagged = true;
        res.note = distinct.size() == 1
                       ? "single level set: within and total variance coincide, the ratio carries no evidence"
                       : "fewer than 5 distinct level sets; the ratio is weak evidence";
    }

    const auto functions = build_basis(basis);
    res.basis_size = functions.size();
    const auto n = static_cast<Eigen::Index>(res.samples);
    const auto m = static_cast<Eigen::Index>(functions.size());

    Eigen::MatrixXd phi(n, m);
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;  // (first row, rows) per trajectory
    Eigen::Index row = 0;
    for (const auto& tr : ensemble) {
        blocks.emplace_back(row, static_cast<Eigen::Index>(tr.samples.size()));
        for (const auto& smp : tr.samples) {
            const CylState& s = smp.state;
            for (Eigen::Index c = 0; c < m; ++c) {
                const auto& f = functions[static_cast<std::size_t>(c)];
                phi(row, c) = std::pow(s.p_r, f.pr_power) * std::pow(s.p_s, f.ps_power) * eval_spatial(f.spatial, s);
            }
            ++row;
        }
    }

    // Total variation: centred on the ensemble mean.
    Eigen::MatrixXd total = phi.rowwise() - phi.colwise().mean();
    // Within-trajectory variation: centred on each trajectory's mean.
    Eigen::MatrixXd within = phi;
    for (const auto& [first, rows] : blocks) {
        auto blk = within.middleRows(first, rows);
        const Eigen::RowVectorXd mean = blk.colwise().mean();
        blk.rowwise() -= mean;
    }

    // Scale columns to unit total norm; drop those constant over the ensemble.
    const Eigen::VectorXd norms = total.colwise().norm();
    const double max_norm = norms.maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index c = 0; c < m; ++c) {
        if (norms(c) > 1e-12 * max_norm) keep.push_back(c);
    }
    Eigen::MatrixXd t_kept(n, static_cast<Eigen::Index>(keep.size()));
    Eigen::MatrixXd w_kept(n, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        t_kept.col(col) = total.col(keep[i]) / norms(keep[i]);
        w_kept.col(col) = within.col(keep[i]) / norms(keep[i]);
    }

    // Whiten the total-variance metric, then minimise the within-variance
    // Rayleigh quotient: sigma_min(W V S^-1)^2.
    Eigen::BDCSVD<Eigen::MatrixXd> svd_total(t_kept, Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd_total.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-9 * sv(0)) ++rank;
    res.effective_rank = static_cast<std::size_t>(rank);
    if (rank == 0) {
        res.flagged = true;
        res.note = "basis has no variation over the ensemble";
        return res;
    }
    const Eigen::MatrixXd whiten =
        svd_total.matrixV().leftCols(rank) * sv.head(rank).cwiseInverse().asDiagonal();
    const Eigen::MatrixXd q = w_kept * whiten;
    Eigen::BDCSVD<Eigen::MatrixXd> svd_q(q);
    const double smin = svd_q.singularValues()(rank - 1);
    res.normalized_residual = smin * smin;
    return res;
}

}  // namespace hkepler::verifier
