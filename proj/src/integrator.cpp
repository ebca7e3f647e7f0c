// hkepler - time integration, drift monitoring and trajectory recording
#include "hkepler/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "hkepler/dynamics.hpp"
#include "hkepler/finite_diff.hpp"
#include "hkepler/potential.hpp"

namespace hkepler::integrator {

using Vec5 = std::array<double, 5>;

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "tolerances must be positive");
    }
    if (!(min_step > 0.0) || !(min_step <= max_step)) {
        throw Error(ErrorCode::invalid_argument, "step bounds must satisfy 0 < min_step <= max_step");
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw Error(ErrorCode::invalid_argument, "t_end must be finite and non-negative");
    }
    if (!(sample_interval > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "sample_interval must be positive");
    }
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::singularity_approach: return "singularity approach";
        case Termination::max_steps: return "max steps";
    }
    return "unknown";
}

double Drift::max() const { return std::max({h, f1, f2, f3}); }

namespace {

// Guard used while stepping; stricter thresholds than the conversion ones.
constexpr double kStepAxisGuard = 1e-9;
constexpr double kStepGaugeGuard = 1e-9;

bool near_singular(const Vec5& y) {
    if (!(y[0] > kStepAxisGuard)) return true;
    // rho < guard  <=>  sqrt(r^4 + 16 z^2) < guard^2
    return !(potential::gauge_rho_squared(y[0], y[2]) > kStepGaugeGuard * kStepGaugeGuard);
}

bool all_finite(const Vec5& y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

Vec5 rhs(const Vec5& y, double k) {
    return dynamics::vector_field_unchecked(CylState::from_array(y), k).as_array();
}

Vec5 axpy(const Vec5& y, double h, std::initializer_list<std::pair<double, const Vec5*>> terms) {
    Vec5 out = y;
    for (std::size_t i = 0; i < 5; ++i) {
        double acc = 0.0;
        for (const auto& [c, kv] : terms) acc += c * (*kv)[i];
        out[i] += h * acc;
    }
    return out;
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension of order 4.
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct DenseStep {
    std::array<Vec5, 5> coeff;

    [[nodiscard]] Vec5 at(double theta) const {
        const double theta1 = 1.0 - theta;
        Vec5 out{};
        for (std::size_t i = 0; i < 5; ++i) {
            out[i] = coeff[0][i] +
                     theta * (coeff[1][i] +
                              theta1 * (coeff[2][i] + theta * (coeff[3][i] + theta1 * coeff[4][i])));
        }
        return out;
    }
};

struct StepAttempt {
    bool singular{false};
    Vec5 y_new{};
    Vec5 k7{};
    double err{0.0};
    DenseStep dense;
};

StepAttempt dopri_attempt(const Vec5& y, const Vec5& k1, double h, double k, const IntegratorConfig& cfg) {
    StepAttempt out;
    auto stage = [&](const Vec5& ys, Vec5& kv) {
        if (near_singular(ys)) {
            out.singular = true;
            return false;
        }
        kv = rhs(ys, k);
        return true;
    };
    Vec5 k2, k3, k4, k5, k6, k7;
    if (!stage(axpy(y, h, {{a21, &k1}}), k2)) return out;
    if (!stage(axpy(y, h, {{a31, &k1}, {a32, &k2}}), k3)) return out;
    if (!stage(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), k4)) return out;
    if (!stage(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), k5)) return out;
    if (!stage(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), k6)) return out;
    const Vec5 y_new = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    if (!stage(y_new, k7)) return out;

    double sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        sum += (e / sc) * (e / sc);
    }
    out.err = std::sqrt(sum / 5.0);

    for (std::size_t i = 0; i < 5; ++i) {
        const double diff = y_new[i] - y[i];
        const double bspl = h * k1[i] - diff;
        out.dense.coeff[0][i] = y[i];
        out.dense.coeff[1][i] = diff;
        out.dense.coeff[2][i] = bspl;
        out.dense.coeff[3][i] = diff - h * k7[i] - bspl;
        out.dense.coeff[4][i] =
            h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    out.y_new = y_new;
    out.k7 = k7;
    return out;
}

double scaled_norm(const Vec5& v, const Vec5& y, const IntegratorConfig& cfg) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
        sum += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(sum / 5.0);
}

// Starting step heuristic from Hairer, Norsett & Wanner (order 5).
double initial_step(const Vec5& y, const Vec5& f0, double k, const IntegratorConfig& cfg) {
    const double d0 = scaled_norm(y, y, cfg);
    const double d1n = scaled_norm(f0, y, cfg);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, cfg.max_step);
    Vec5 y1 = axpy(y, h0, {{1.0, &f0}});
    if (near_singular(y1)) return std::max(cfg.min_step, h0 * 1e-3);
    const Vec5 f1 = rhs(y1, k);
    Vec5 df{};
    for (std::size_t i = 0; i < 5; ++i) df[i] = f1[i] - f0[i];
    const double d2 = scaled_norm(df, y, cfg) / h0;
    const double dmax = std::max(d1n, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::clamp(std::min(100.0 * h0, h1), cfg.min_step, cfg.max_step);
}

Sample make_sample(double t, const CylState& s, const PotentialParams& params) {
    return {t, s, integrals::evaluate_integrals(s, params)};
}

void accumulate_drift(Drift& d, const integrals::IntegralValues& v, const integrals::IntegralValues& v0) {
    d.h = std::max(d.h, std::abs(v.h - v0.h));
    d.f1 = std::max(d.f1, std::abs(v.f1 - v0.f1));
    d.f2 = std::max(d.f2, std::abs(v.f2 - v0.f2));
    d.f3 = std::max(d.f3, std::abs(v.f3 - v0.f3));
}

bool admissible(const CylState& s) {
    return s.finite() && s.r > kAxisThreshold &&
           potential::gauge_rho_squared(s.r, s.z) > kOriginThreshold * kOriginThreshold;
}

}  // namespace

CylState step_fixed_rk4(const CylState& s, double dt, const PotentialParams& params) {
    if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "dt must be positive");
    dynamics::require_admissible(s);
    const double k = params.k();
    const Vec5 y = s.as_array();
    auto stage = [&](const Vec5& ys) {
        if (near_singular(ys) || !all_finite(ys)) {
            throw Error(ErrorCode::step_singularity, "RK4 stage reached the singular set");
        }
        return rhs(ys, k);
    };
    const Vec5 k1 = stage(y);
    const Vec5 k2 = stage(axpy(y, 0.5 * dt, {{1.0, &k1}}));
    const Vec5 k3 = stage(axpy(y, 0.5 * dt, {{1.0, &k2}}));
    const Vec5 k4 = stage(axpy(y, dt, {{1.0, &k3}}));
    const Vec5 out = axpy(y, dt / 6.0, {{1.0, &k1}, {2.0, &k2}, {2.0, &k3}, {1.0, &k4}});
    if (!all_finite(out)) throw Error(ErrorCode::diverged, "RK4 step produced a non-finite state");
    return CylState::from_array(out);
}

Trajectory integrate(const CylState& s0, const IntegratorConfig& cfg, const PotentialParams& params) {
    cfg.validate();
    dynamics::require_admissible(s0);
    const double k = params.k();

    Trajectory traj;
    traj.params = params;
    traj.samples.push_back(make_sample(0.0, s0, params));
    traj.integrals_at_start = traj.samples.front().values;
    const auto& v0 = traj.integrals_at_start;

    if (cfg.t_end == 0.0) return traj;

    // Sample grid i * interval, with t_end appended when it is off-grid.
    const auto n_grid = static_cast<long>(std::floor(cfg.t_end / cfg.sample_interval * (1.0 + 1e-12)));
    auto sample_time = [&](long i) { return std::min(cfg.t_end, static_cast<double>(i) * cfg.sample_interval); };
    const bool end_on_grid = std::abs(sample_time(n_grid) - cfg.t_end) <= 1e-12 * std::max(1.0, cfg.t_end);
    const long n_samples = end_on_grid ? n_grid : n_grid + 1;
    long next = 1;

    Vec5 y = s0.as_array();
    Vec5 k1 = rhs(y, k);
    double t = 0.0;
    double h = cfg.initial_step > 0.0 ? std::min(cfg.initial_step, cfg.max_step) : initial_step(y, k1, k, cfg);

    constexpr double safety = 0.9;
    constexpr double beta = 0.04;
    constexpr double expo1 = 0.2 - beta * 0.75;
    constexpr double fac_min = 0.2;  // largest shrink per step is 1/5
    constexpr double fac_max = 10.0;
    double facold = 1e-4;
    long steps = 0;

    auto terminate = [&](Termination why, std::string msg) {
        traj.termination = why;
        traj.message = std::move(msg);
    };

    while (next <= n_samples) {
        if (++steps > cfg.max_steps) {
            terminate(Termination::max_steps, "step budget exhausted");
            break;
        }
        const bool last = t + h >= cfg.t_end * (1.0 - 1e-15);
        const double step = last ? cfg.t_end - t : h;

        StepAttempt att = dopri_attempt(y, k1, step, k, cfg);
        if (att.singular) {
            h = 0.5 * step;
            ++traj.rejected_steps;
            if (h < cfg.min_step) {
                terminate(Termination::singularity_approach, "step size fell below min_step near a singularity");
                break;
            }
            continue;
        }
        if (!all_finite(att.y_new) || !std::isfinite(att.err)) {
            throw Error(ErrorCode::diverged, "integration produced a non-finite state");
        }

        const double fac11 = std::pow(std::max(att.err, 1e-300), expo1);
        if (att.err <= 1.0) {
            const double t_new = last ? cfg.t_end : t + step;
            while (next <= n_samples && sample_time(next) <= t_new) {
                const double ts = sample_time(next);
                const Vec5 ys = (ts >= t_new) ? att.y_new : att.dense.at((ts - t) / step);
                const CylState cs = CylState::from_array(ys);
                if (!admissible(cs)) {
                    terminate(Termination::singularity_approach, "interpolated state left the admissible region");
                    break;
                }
                traj.samples.push_back(make_sample(ts, cs, params));
                accumulate_drift(traj.drift, traj.samples.back().values, v0);
                ++next;
            }
            if (traj.termination != Termination::completed) break;

            ++traj.accepted_steps;
            t = t_new;
            y = att.y_new;
            k1 = att.k7;
            if (cfg.project) {
                y = project_to_level_set(CylState::from_array(y), v0, params).as_array();
                k1 = rhs(y, k);
            }
            double fac = fac11 / std::pow(facold, beta);
            fac = std::clamp(fac / safety, 1.0 / fac_max, 1.0 / fac_min);
            facold = std::max(att.err, 1e-4);
            h = std::min(step / fac, cfg.max_step);
        } else {
            ++traj.rejected_steps;
            h = step / std::min(1.0 / fac_min, fac11 / safety);
        }
        if (h < cfg.min_step) {
            terminate(Termination::singularity_approach, "step size underflow");
            break;
        }
    }
    return traj;
}

Trajectory integrate_fixed_rk4(const CylState& s0, double dt, double t_end, const PotentialParams& params) {
    if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "dt must be positive");
    dynamics::require_admissible(s0);
    Trajectory traj;
    traj.params = params;
    traj.samples.push_back(make_sample(0.0, s0, params));
    traj.integrals_at_start = traj.samples.front().values;
    double t = 0.0;
    CylState s = s0;
    while (t < t_end * (1.0 - 1e-15)) {
        const double step = std::min(dt, t_end - t);
        try {
            s = step_fixed_rk4(s, step, params);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::step_singularity) throw;
            traj.termination = Termination::singularity_approach;
            traj.message = e.what();
            break;
        }
        t = (t_end - t <= dt) ? t_end : t + step;
        ++traj.accepted_steps;
        traj.samples.push_back(make_sample(t, s, params));
        accumulate_drift(traj.drift, traj.samples.back().values, traj.integrals_at_start);
    }
    return traj;
}

CylState project_to_level_set(const CylState& s, const integrals::IntegralValues& target,
                              const PotentialParams& params) {
    auto values = [&params](const Vec5& a) {
        const CylState st = CylState::from_array(a);
        return std::array<double, 4>{dynamics::hamiltonian(st, params), integrals::f1(st, params),
                                     integrals::f2(st, params), integrals::f3(st, params)};
    };
    const std::array<double, 4> goal{target.h, target.f1, target.f2, target.f3};
    Vec5 y = s.as_array();
    for (int iter = 0; iter < 3; ++iter) {
        std::array<double, 4> v{};
        try {
            v = values(y);
        } catch (const Error&) {
            return s;  // an iterate left the admissible region
        }
        Eigen::Vector4d g;
        for (int i = 0; i < 4; ++i) g(i) = v[static_cast<std::size_t>(i)] - goal[static_cast<std::size_t>(i)];
        if (g.norm() < 1e-15) break;
        Eigen::Matrix<double, 4, 5> jac;
        for (int i = 0; i < 4; ++i) {
            auto fi = [&values, i](const Vec5& a) { return values(a)[static_cast<std::size_t>(i)]; };
            const auto row = fd::gradient(fi, y);
            for (int c = 0; c < 5; ++c) jac(i, c) = row[static_cast<std::size_t>(c)];
        }
        // The four integrals are dependent (rank 3); the decomposition copes.
        // The threshold must be set before compute() to affect the rank.
        Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<double, 4, 5>> cod(4, 5);
        cod.setThreshold(1e-7);
        cod.compute(jac);
        const Eigen::Matrix<double, 5, 1> delta = cod.solve(g);
        for (int c = 0; c < 5; ++c) y[static_cast<std::size_t>(c)] -= delta(c);
    }
    const CylState out = CylState::from_array(y);
    return admissible(out) ? out : s;
}

double relative_drift(const integrals::IntegralValues& now, const integrals::IntegralValues& start) {
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    return std::max({rel(now.h, start.h), rel(now.f1, start.f1), rel(now.f2, start.f2), rel(now.f3, start.f3)});
}

DriftReport drift_report(const Trajectory& traj, double bound_slack) {
    if (traj.samples.empty()) throw Error(ErrorCode::invalid_argument, "trajectory has no samples");
    DriftReport rep;
    rep.samples = traj.samples.size();
    const auto& v0 = traj.samples.front().values;
    std::array<double, 4> sum{};
    double max_gauge = 0.0;
    for (const auto& smp : traj.samples) {
        const std::array<double, 4> dev{std::abs(smp.values.h - v0.h), std::abs(smp.values.f1 - v0.f1),
                                        std::abs(smp.values.f2 - v0.f2), std::abs(smp.values.f3 - v0.f3)};
        for (std::size_t i = 0; i < 4; ++i) {
            rep.integrals[i].max_abs = std::max(rep.integrals[i].max_abs, dev[i]);
            sum[i] += dev[i];
        }
        rep.relation_residual_max =
            std::max(rep.relation_residual_max, std::abs(integrals::relation_residual(smp.values, traj.params)));
        max_gauge = std::max(max_gauge, potential::gauge_rho_squared(smp.state.r, smp.state.z));
    }
    for (std::size_t i = 0; i < 4; ++i) rep.integrals[i].mean_abs = sum[i] / static_cast<double>(rep.samples);
    if (v0.h < 0.0) {
        const double bound = traj.params.k() / std::abs(v0.h);
        rep.boundedness = DriftReport::BoundCheck{bound, max_gauge, max_gauge <= bound + bound_slack};
    }
    return rep;
}

}  // namespace hkepler::integrator
