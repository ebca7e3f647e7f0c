#include "hkepler/suites.hpp"

#include <algorithm>
#include <cmath>

#include "hkepler/dynamics.hpp"
#include "hkepler/geometry.hpp"
#include "hkepler/integrals.hpp"
#include "hkepler/potential.hpp"
#include "hkepler/sampling.hpp"
#include "hkepler/verifier.hpp"

namespace hkepler::suites {

namespace {

Check at_most(std::string name, double measured, double threshold) {
    return {std::move(name), measured, threshold, Check::Kind::at_most, measured <= threshold};
}

Check at_least(std::string name, double measured, double threshold) {
    return {std::move(name), measured, threshold, Check::Kind::at_least, measured >= threshold};
}

dynamics::Observable corrupted_f1(const PotentialParams& params) {
    const double k = params.k();
    return [params, k](const CylState& s) {
        const double flip = 2.0 * k * s.r * s.r / potential::gauge_rho_squared(s.r, s.z);
        return integrals::f1(s, params) - flip * std::sin(2.0 * s.theta);
    };
}

}  // namespace

bool SuiteResult::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

SuiteResult relation_suite(const SuiteOptions& opt) {
    SuiteResult res{"relation", {}, {}};
    auto rng = sampling::stream(opt.seed, 1);
    const double k2 = opt.params.k() * opt.params.k();
    double worst = 0.0;
    for (int i = 0; i < opt.relation_samples; ++i) {
        const auto v = integrals::evaluate_integrals(sampling::random_state(rng), opt.params);
        worst = std::max(worst, std::abs(integrals::relation_residual(v, opt.params)) / k2);
    }
    res.checks.push_back(at_most("relation_residual_over_k2", worst, opt.tol.identity_tol));
    return res;
}

SuiteResult bracket_suite(const SuiteOptions& opt) {
    SuiteResult res{"brackets", {}, {}};
    auto rng = sampling::stream(opt.seed, 2);
    const auto h = dynamics::hamiltonian_observable(opt.params);
    const std::vector<std::pair<std::string, dynamics::Observable>> fs{
        {"F1", opt.corrupt_f1 ? corrupted_f1(opt.params) : integrals::f1_observable(opt.params)},
        {"F2", integrals::f2_observable(opt.params)},
        {"F3", integrals::f3_observable(opt.params)},
    };
    if (opt.corrupt_f1) res.notes.emplace_back("F1 deliberately corrupted");
    std::vector<double> bracket(fs.size(), 0.0);
    std::vector<double> rate(fs.size(), 0.0);
    for (int i = 0; i < opt.bracket_samples; ++i) {
        const CylState s = sampling::random_state(rng);
        for (std::size_t j = 0; j < fs.size(); ++j) {
            bracket[j] = std::max(bracket[j], std::abs(dynamics::almost_poisson(fs[j].second, h, s, opt.params)));
            rate[j] = std::max(rate[j], std::abs(verifier::integral_residual(fs[j].second, s, opt.params)));
        }
    }
    for (std::size_t j = 0; j < fs.size(); ++j) {
        res.checks.push_back(at_most("bracket_" + fs[j].first + "_H", bracket[j], opt.tol.bracket_tol));
        res.checks.push_back(at_most("rate_" + fs[j].first, rate[j], opt.tol.bracket_tol));
    }
    return res;
}

SuiteResult appendix_suite(const SuiteOptions& opt) {
    SuiteResult res{"appendix", {}, {}};
    auto rng = sampling::stream(opt.seed, 3);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const double k = opt.params.k();

    double pde = 0.0;
    double assembled = 0.0;
    double forms = 0.0;
    for (int i = 0; i < opt.pde_samples; ++i) {
        const verifier::AppendixConstants c{coef(rng), coef(rng), coef(rng)};
        const auto cand = verifier::tilde_coefficients(c, opt.params);
        for (double r : verifier::pde_residuals(cand, sampling::random_point(rng), opt.params)) {
            pde = std::max(pde, std::abs(r));
        }
        const CylState s = sampling::random_state(rng);
        const double f1 = integrals::f1(s, opt.params);
        const double f2 = integrals::f2(s, opt.params);
        const double f3 = integrals::f3(s, opt.params);
        const double scale = std::max({1.0, std::abs(c.c2 * f1), std::abs(c.c3 * f2), std::abs(c.c4 * f3)});
        assembled = std::max(assembled, std::abs(cand(s) - (c.c2 * f1 + c.c3 * f2 + c.c4 * f3)) / scale);
        forms = std::max(forms, std::abs(f3 - integrals::f3_compact(s, opt.params)) / std::max(1.0, std::abs(f3)));
    }

    // 2H written as a quadratic candidate must solve the same system.
    verifier::QuadraticCandidate two_h;
    two_h.a = [](const CylPoint&) { return 1.0; };
    two_h.d = [](const CylPoint&) { return 0.0; };
    two_h.b = [](const CylPoint& p) { return 1.0 / (p.r * p.r); };
    two_h.h = [k](const CylPoint& p) { return -2.0 * k / potential::gauge_rho_squared(p.r, p.z); };
    double energy = 0.0;
    for (int i = 0; i < opt.pde_samples; ++i) {
        for (double r : verifier::pde_residuals(two_h, sampling::random_point(rng), opt.params)) {
            energy = std::max(energy, std::abs(r));
        }
    }

    res.checks.push_back(at_most("pde_residual_tilde", pde, opt.tol.fd_tol));
    res.checks.push_back(at_most("pde_residual_2H", energy, opt.tol.fd_tol));
    res.checks.push_back(at_most("tilde_vs_combination", assembled, 1e-12));
    res.checks.push_back(at_most("f3_forms", forms, 1e-12));
    return res;
}

SuiteResult harmonicity_suite(const SuiteOptions& opt) {
    SuiteResult res{"harmonicity", {}, {}};
    auto rng = sampling::stream(opt.seed, 4);
    const auto control = potential::potential_with_z_weight(opt.params, 1.0 / 16.0);
    double worst = 0.0;
    double control_worst = 0.0;
    for (int i = 0; i < opt.harmonic_samples; ++i) {
        const CartPoint p = sampling::random_gauge_point(rng, 0.5, 5.0);
        const double u = std::abs(potential::potential_u(p, opt.params));
        worst = std::max(worst, std::abs(potential::sublaplacian_residual(p, opt.params)) / u);
        control_worst = std::max(control_worst, std::abs(potential::sublaplacian(control, p)) / std::abs(control(p)));
    }

    // Truncation order from steps h and h/2 at a fixed point.
    const CartPoint ref{1.0, 0.5, 0.3};
    const double coarse = potential::sublaplacian_residual(ref, opt.params, 0.02);
    const double fine = potential::sublaplacian_residual(ref, opt.params, 0.01);
    const double order = std::log2(std::abs(coarse / fine));

    res.checks.push_back(at_most("relative_residual", worst, opt.tol.harmonic_tol));
    res.checks.push_back(at_most("convergence_order_error", std::abs(order - 2.0), 0.1));
    res.checks.push_back(at_least("control_relative_residual", control_worst, opt.tol.harmonic_tol));
    res.notes.push_back("estimated order " + std::to_string(order));
    return res;
}

std::vector<integrator::Trajectory> probe_ensemble(const PotentialParams& params) {
    integrator::IntegratorConfig cfg;
    cfg.t_end = 20.0;
    cfg.sample_interval = 0.05;
    std::vector<integrator::Trajectory> out;
    for (double p_y : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        const CartState c{{1.0, 0.0, 0.0}, 0.0, p_y};
        out.push_back(integrator::integrate(geometry::to_cylindrical(c), cfg, params));
    }
    return out;
}

SuiteResult probe_suite(const SuiteOptions& opt) {
    SuiteResult res{"probe", {}, {}};
    const auto ensemble = probe_ensemble(opt.params);
    verifier::ProbeBasis linear;
    const auto lin = verifier::linear_probe(opt.params, ensemble, linear);
    verifier::ProbeBasis quadratic;
    quadratic.momentum_order = 2;
    const auto quad = verifier::linear_probe(opt.params, ensemble, quadratic);
    res.checks.push_back(at_least("linear_basis_residual", lin.normalized_residual, opt.tol.probe_floor));
    res.checks.push_back(at_most("quadratic_basis_residual", quad.normalized_residual, opt.tol.probe_control));
    res.notes.push_back("linear basis: " + std::to_string(lin.basis_size) + " functions, rank " +
                        std::to_string(lin.effective_rank) + "; evidence only, not a proof");
    if (lin.flagged) res.notes.push_back(lin.note);
    return res;
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& opt) {
    if (name == "relation") return relation_suite(opt);
    if (name == "brackets") return bracket_suite(opt);
    if (name == "appendix") return appendix_suite(opt);
    if (name == "harmonicity") return harmonicity_suite(opt);
    if (name == "probe") return probe_suite(opt);
    throw Error(ErrorCode::invalid_argument, "unknown suite '" + std::string(name) + "'");
}

}  // namespace hkepler::suites
