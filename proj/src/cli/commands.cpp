#include "hkepler/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include <spdlog/spdlog.h>

#include "hkepler/cli/output.hpp"
#include "hkepler/geometry.hpp"
#include "hkepler/integrals.hpp"
#include "hkepler/special.hpp"
#include "hkepler/suites.hpp"
#include "hkepler/surfaces.hpp"

namespace hkepler::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::config, what); }

Json section(const Json& doc, const char* name) {
    if (!doc.contains(name)) return Json::object();
    const auto& s = doc.at(name);
    if (!s.is_object()) fail(std::string("'") + name + "' must be an object");
    return s;
}

double number(const Json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) fail(std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::optional<double> optional_number(const Json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return number(j, key, 0.0);
}

std::size_t count(const Json& j, const char* key, std::size_t fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(std::string("'") + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

bool flag(const Json& j, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) fail(std::string("'") + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json state_json(const CylState& s) {
    const CartState c = geometry::from_cylindrical(s);
    return Json{
        {"cylindrical", {{"r", s.r}, {"theta", s.theta}, {"z", s.z}, {"p_r", s.p_r}, {"p_s", s.p_s}}},
        {"cartesian", {{"x", c.point.x}, {"y", c.point.y}, {"z", c.point.z}, {"p_x", c.p_x}, {"p_y", c.p_y}}},
    };
}

Json integrals_json(const integrals::IntegralValues& v) {
    return Json{
        {"H", v.h},
        {"F1", v.f1},
        {"F2", v.f2},
        {"F3", v.f3},
        {"J", v.j},
        {"theta0", optional_json(v.theta0)},
        {"case", std::string(integrals::to_string(v.integral_case))},
    };
}

Json integrator_json(const integrator::IntegratorConfig& c) {
    return Json{
        {"method", "dopri5"},      {"rel_tol", c.rel_tol},     {"abs_tol", c.abs_tol},
        {"max_step", c.max_step},  {"min_step", c.min_step},   {"t_end", c.t_end},
        {"sample_interval", c.sample_interval},                {"project", c.project},
    };
}

Json spec_json(const surfaces::SurfaceSpec& spec) {
    return Json{
        {"case", std::string(integrals::to_string(spec.integral_case))},
        {"k", spec.k},
        {"H", spec.h},
        {"F3", spec.f3},
        {"J", spec.j},
        {"theta0", optional_json(spec.theta0)},
    };
}

// Residuals of the trajectory against the surface family it belongs to.
Json trajectory_surface_checks(const integrator::Trajectory& traj, const RunConfig& cfg) {
    const auto& v = traj.integrals_at_start;
    Json out{{"case", std::string(integrals::to_string(v.integral_case))}};
    if (v.integral_case == integrals::IntegralCase::degenerate) {
        double max_z = 0.0;
        double max_angle = 0.0;
        const double theta0 = v.theta0.value_or(0.0);
        for (const auto& s : traj.samples) {
            max_z = std::max(max_z, std::abs(s.state.z));
            max_angle = std::max(max_angle, integrals::angle_distance_mod_pi(s.state.theta, theta0));
        }
        out["theta0"] = theta0;
        out["max_abs_z"] = max_z;
        out["max_angle_deviation"] = max_angle;
        return out;
    }
    const auto spec = surfaces::surface_spec_from_integrals(v, cfg.params);
    double worst = 0.0;
    double ellipsoid = 0.0;
    for (const auto& s : traj.samples) {
        worst = std::max(worst, std::abs(surfaces::surface_residual(s.state.position(), spec)));
        if (spec.integral_case == integrals::IntegralCase::min_energy) {
            ellipsoid = std::max(ellipsoid, std::abs(surfaces::min_energy_residual(s.state.position(), spec)));
        }
    }
    out["max_residual"] = worst;
    if (spec.integral_case == integrals::IntegralCase::min_energy) out["max_ellipsoid_residual"] = ellipsoid;
    return out;
}

Json drift_json(const integrator::DriftReport& dr) {
    Json out = Json::object();
    double worst = 0.0;
    for (std::size_t i = 0; i < dr.integrals.size(); ++i) {
        out[std::string(integrator::DriftReport::names[i])] = {{"max_abs", dr.integrals[i].max_abs},
                                                                {"mean_abs", dr.integrals[i].mean_abs}};
        worst = std::max(worst, dr.integrals[i].max_abs);
    }
    out["max"] = worst;
    return out;
}

int termination_exit(integrator::Termination t) {
    return t == integrator::Termination::singularity_approach ? static_cast<int>(ExitCode::singularity)
                                                              : static_cast<int>(ExitCode::ok);
}

Json check_json(const suites::Check& c) {
    return Json{
        {"name", c.name},
        {"measured", c.measured},
        {"threshold", c.threshold},
        {"kind", c.kind == suites::Check::Kind::at_most ? "at_most" : "at_least"},
        {"pass", c.pass},
    };
}

Outcome special_stationary(const RunConfig& cfg, const Json& sec) {
    const auto h = optional_number(sec, "h");
    if (!h) fail("special stationary needs 'h'");
    const auto points = special::stationary_points(cfg.params, *h);
    std::string csv = "z,H,F3,J2,ellipsoid_residual\n";
    Json rows = Json::array();
    double worst_j2 = 0.0;
    double worst_ellipsoid = 0.0;
    for (const auto& p : points) {
        const auto spec = surfaces::make_surface_spec(cfg.params, p.h, p.f3, std::nullopt);
        // The equilibrium sits on the axis, where the ellipsoid reaches its top or bottom.
        const double ellipsoid = surfaces::min_energy_residual({0.0, 0.0, p.z}, spec);
        worst_j2 = std::max(worst_j2, std::abs(p.j_squared));
        worst_ellipsoid = std::max(worst_ellipsoid, std::abs(ellipsoid));
        csv += fmt(p.z) + ',' + fmt(p.h) + ',' + fmt(p.f3) + ',' + fmt(p.j_squared) + ',' + fmt(ellipsoid) + '\n';
        rows.push_back({{"z", p.z}, {"H", p.h}, {"F3", p.f3}, {"J2", p.j_squared}, {"ellipsoid_residual", ellipsoid}});
    }
    write_text(cfg.out / "stationary.csv", csv);
    Json rep = report_header(cfg, "special");
    rep["kind"] = "stationary";
    rep["H"] = *h;
    rep["rows"] = rows;
    rep["max_abs_j_squared"] = worst_j2;
    rep["max_abs_ellipsoid_residual"] = worst_ellipsoid;
    return {0, rep};
}

Outcome special_heteroclinic(const RunConfig& cfg, const Json& sec) {
    const double k = cfg.params.k();
    double h = 0.0;
    if (sec.contains("h")) {
        h = number(sec, "h", 0.0);
    } else if (sec.contains("z0")) {
        const double z0 = number(sec, "z0", 0.0);
        if (!(z0 > 0.0)) fail("'z0' must be positive");
        h = -k / (4.0 * z0);
    } else {
        fail("special heteroclinic needs 'h' or 'z0'");
    }
    const auto curve = special::heteroclinic_curve(cfg.params, h, number(sec, "theta0", 0.0));
    const double z0 = curve.z0;
    const std::size_t n = count(sec, "samples", 101);
    const double z_min = number(sec, "z_min", -0.99 * z0);
    const double z_max = number(sec, "z_max", 0.99 * z0);
    if (n < 2 || !(z_min < z_max)) fail("heteroclinic table needs samples >= 2 and z_min < z_max");

    std::string csv = "z,r,theta,pR,pS,zdot,t_closed,t_quadrature\n";
    bool monotone = true;
    double prev_theta = -std::numeric_limits<double>::infinity();
    double worst_time = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = z_min + (z_max - z_min) * static_cast<double>(i) / static_cast<double>(n - 1);
        const auto p = special::heteroclinic_point(curve, z);
        const double tc = special::heteroclinic_time(curve, z);
        const double tq = special::heteroclinic_time_quadrature(curve, z);
        worst_time = std::max(worst_time, std::abs(tc - tq));
        monotone = monotone && p.state.theta > prev_theta;
        prev_theta = p.state.theta;
        csv += fmt(z) + ',' + fmt(p.state.r) + ',' + fmt(p.state.theta) + ',' + fmt(p.state.p_r) + ',' +
               fmt(p.state.p_s) + ',' + fmt(p.z_dot) + ',' + fmt(tc) + ',' + fmt(tq) + '\n';
    }
    write_text(cfg.out / "heteroclinic.csv", csv);

    const double z_check = number(sec, "z_check", 0.5 * z0);
    const double t_closed = special::heteroclinic_time(curve, z_check);
    const double t_quad = special::heteroclinic_time_quadrature(curve, z_check);

    // Numeric run from the curve's crossing of z = 0.
    const CylState start = special::heteroclinic_point(curve, 0.0).state;
    const auto traj = integrator::integrate(start, cfg.integrator, cfg.params);
    write_trajectory_csv(cfg.out / "heteroclinic_run.csv", traj);
    double err_r = 0.0;
    double err_theta = 0.0;
    double max_z = -std::numeric_limits<double>::infinity();
    bool inside = true;
    for (const auto& s : traj.samples) {
        max_z = std::max(max_z, s.state.z);
        if (!(std::abs(s.state.z) < z0)) {
            inside = false;
            continue;
        }
        const auto p = special::heteroclinic_point(curve, s.state.z);
        err_r = std::max(err_r, std::abs(p.state.r - s.state.r));
        err_theta = std::max(err_theta, std::abs(p.state.theta - s.state.theta));
    }

    Json rep = report_header(cfg, "special");
    rep["kind"] = "heteroclinic";
    rep["H"] = h;
    rep["z0"] = z0;
    rep["F3"] = curve.f3();
    rep["theta_monotone"] = monotone;
    rep["max_table_time_difference"] = worst_time;
    rep["time_check"] = {{"z", z_check},
                         {"closed_form", t_closed},
                         {"quadrature", t_quad},
                         {"abs_difference", std::abs(t_closed - t_quad)}};
    rep["shadow"] = {{"initial", state_json(start)},
                     {"t_end", traj.samples.back().t},
                     {"termination", std::string(integrator::to_string(traj.termination))},
                     {"max_r_error", err_r},
                     {"max_theta_error", err_theta},
                     {"max_error", std::max(err_r, err_theta)},
                     {"max_z", max_z},
                     {"below_z0", inside && max_z < z0}};
    return {termination_exit(traj.termination), rep};
}

Outcome special_radial(const RunConfig& cfg, const Json& sec) {
    const auto h = optional_number(sec, "h");
    if (!h) fail("special radial needs 'h'");
    const double k = cfg.params.k();
    const double default_r0 = *h < 0.0 ? 0.5 * std::sqrt(k / std::abs(*h)) : 1.0;
    const double r0 = number(sec, "r0", default_r0);
    const bool outgoing = flag(sec, "outgoing", true);
    const double theta = number(sec, "theta", 0.0);
    const auto sol = special::radial_solution(cfg.params, *h, r0, outgoing, theta);

    // Stop short of the collision, where the closed form has a square-root branch point.
    double t_stop = cfg.integrator.t_end;
    if (sol.collision_time) t_stop = std::min(t_stop, 0.9 * *sol.collision_time);
    const std::size_t n = count(sec, "samples", 101);
    if (n < 2) fail("radial table needs samples >= 2");
    std::string csv = "t,r,pR\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double t = t_stop * static_cast<double>(i) / static_cast<double>(n - 1);
        csv += fmt(t) + ',' + fmt(sol.radius_at(t)) + ',' + fmt(sol.p_r_at(t)) + '\n';
    }
    write_text(cfg.out / "radial.csv", csv);

    auto icfg = cfg.integrator;
    icfg.t_end = t_stop;
    const auto traj = integrator::integrate(sol.state_at(0.0), icfg, cfg.params);
    double err_r = 0.0;
    double max_z = 0.0;
    double max_angle = 0.0;
    for (const auto& s : traj.samples) {
        err_r = std::max(err_r, std::abs(s.state.r - sol.radius_at(s.t)));
        max_z = std::max(max_z, std::abs(s.state.z));
        max_angle = std::max(max_angle, integrals::angle_distance_mod_pi(s.state.theta, theta));
    }

    Json rep = report_header(cfg, "special");
    rep["kind"] = "radial";
    rep["H"] = *h;
    rep["r0"] = r0;
    rep["p_r0"] = sol.p_r0;
    rep["theta"] = theta;
    rep["turning_radius"] = optional_json(sol.turning_radius);
    rep["turning_time"] = optional_json(sol.turning_time);
    rep["collision_time"] = optional_json(sol.collision_time);
    if (sol.turning_radius && sol.turning_time) {
        rep["turning_time_quadrature"] = sol.time_to_radius(*sol.turning_radius);
    }
    rep["numeric"] = {{"t_end", traj.samples.back().t},
                      {"termination", std::string(integrator::to_string(traj.termination))},
                      {"max_r_error", err_r},
                      {"max_abs_z", max_z},
                      {"max_angle_deviation", max_angle}};
    return {termination_exit(traj.termination), rep};
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::axis_singularity:
        case ErrorCode::origin_singularity:
        case ErrorCode::step_singularity:
        case ErrorCode::diverged: return static_cast<int>(ExitCode::singularity);
        default: return static_cast<int>(ExitCode::config_error);
    }
}

Outcome guarded(const std::function<Outcome()>& body) {
    auto failed = [](int code, const std::string& kind, const std::string& what) {
        spdlog::error("{}", what);
        return Outcome{code, Json{{"error", what}, {"error_code", kind}}};
    };
    try {
        return body();
    } catch (const Error& e) {
        return failed(exit_code_for(e.code()), std::string(to_string(e.code())), e.what());
    } catch (const Json::exception& e) {
        return failed(static_cast<int>(ExitCode::config_error), "config", e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return failed(static_cast<int>(ExitCode::config_error), "io", e.what());
    } catch (const std::exception& e) {
        return failed(static_cast<int>(ExitCode::verification_failure), "internal", e.what());
    }
}

Outcome cmd_simulate(const Json& config) {
    const RunConfig cfg = parse_run_config(config);
    const CylState s0 = cfg.initial_state();
    spdlog::info("simulate: k={} t_end={} out={}", cfg.params.k(), cfg.integrator.t_end, cfg.out.string());
    const auto traj = integrator::integrate(s0, cfg.integrator, cfg.params);
    spdlog::debug("accepted {} rejected {} samples {}", traj.accepted_steps, traj.rejected_steps, traj.samples.size());

    write_trajectory_csv(cfg.out / "trajectory.csv", traj);
    write_text(cfg.out / "trajectory.gp", trajectory_plot_script("trajectory.csv"));

    const auto dr = integrator::drift_report(traj);
    Json rep = report_header(cfg, "simulate");
    rep["initial"] = state_json(s0);
    rep["integrator"] = integrator_json(cfg.integrator);
    rep["termination"] = std::string(integrator::to_string(traj.termination));
    rep["message"] = traj.message;
    rep["accepted_steps"] = traj.accepted_steps;
    rep["rejected_steps"] = traj.rejected_steps;
    rep["samples"] = traj.samples.size();
    rep["t_final"] = traj.samples.back().t;
    rep["integrals"] = integrals_json(traj.integrals_at_start);
    rep["drift"] = drift_json(dr);
    rep["relation_residual_max"] = dr.relation_residual_max;
    if (dr.boundedness) {
        rep["boundedness"] = {{"bound", dr.boundedness->bound},
                              {"max_gauge", dr.boundedness->max_gauge},
                              {"holds", dr.boundedness->holds}};
    }
    rep["surface"] = trajectory_surface_checks(traj, cfg);
    rep["drift_within_budget"] = rep["drift"]["max"].get<double>() <= cfg.tol.drift_tol;
    write_json(cfg.out / "report.json", rep);
    if (traj.termination == integrator::Termination::singularity_approach) {
        spdlog::warn("singularity approach at t={}: {}", traj.samples.back().t, traj.message);
    }
    return {termination_exit(traj.termination), rep};
}

Outcome cmd_surface(const Json& config) {
    const RunConfig cfg = parse_run_config(config);
    const Json sec = section(config, "surface");
    surfaces::SurfaceSpec spec;
    Json source;
    if (sec.contains("h")) {
        const auto f3 = optional_number(sec, "f3");
        if (!f3) fail("surface needs 'f3' next to 'h'");
        const double h = number(sec, "h", 0.0);
        try {
            spec = surfaces::make_surface_spec(cfg.params, h, *f3, optional_number(sec, "theta0"));
        } catch (const Error& e) {
            fail(e.what());
        }
        source = "parameters";
    } else {
        const CylState s0 = cfg.initial_state();
        spec = surfaces::surface_spec_from_integrals(integrals::evaluate_integrals(s0, cfg.params), cfg.params);
        source = state_json(s0);
    }
    if (spec.integral_case == integrals::IntegralCase::degenerate) {
        fail("F3 = 0: the invariant set is the line z = 0, theta = theta0 mod pi, not a surface");
    }

    const auto mesh = surfaces::sample_surface(spec, count(sec, "n_r", 80), count(sec, "n_theta", 96),
                                               optional_number(sec, "r_max"), cfg.tol.mesh_tol);
    write_mesh_csv(cfg.out / "mesh.csv", mesh);
    write_text(cfg.out / "surface.gp",
               surface_plot_script("mesh.csv", std::string(integrals::to_string(spec.integral_case)) + " surface"));

    const auto conic = surfaces::trace_conic(spec);
    double worst = 0.0;
    double worst_relative = 0.0;
    double ellipsoid = 0.0;
    double reflect = 0.0;
    double half_turn = 0.0;
    double conic_fit = 0.0;
    std::size_t trace_points = 0;
    for (const auto& p : mesh.points) {
        const double res = surfaces::surface_residual({p.r, p.theta, p.z}, spec);
        worst = std::max(worst, std::abs(res));
        worst_relative = std::max(worst_relative, std::abs(res) / surfaces::surface_residual_scale({p.r, p.theta, p.z}, spec));
        const CylPoint mirrored{p.r, p.theta, -p.z};
        const CylPoint turned{p.r, p.theta + std::numbers::pi, p.z};
        reflect = std::max(reflect, std::abs(surfaces::surface_residual(mirrored, spec)) /
                                        surfaces::surface_residual_scale(mirrored, spec));
        half_turn = std::max(half_turn, std::abs(surfaces::surface_residual(turned, spec)) /
                                            surfaces::surface_residual_scale(turned, spec));
        if (spec.integral_case == integrals::IntegralCase::min_energy) {
            ellipsoid = std::max(ellipsoid, std::abs(surfaces::min_energy_residual({p.r, p.theta, p.z}, spec)));
        }
        if (p.z == 0.0 && p.r > 0.0) {
            ++trace_points;
            conic_fit = std::max(conic_fit,
                                 std::abs(surfaces::conic_residual(conic, p.r * std::cos(p.theta), p.r * std::sin(p.theta))));
        }
    }

    Json rep = report_header(cfg, "surface");
    rep["source"] = source;
    rep["spec"] = spec_json(spec);
    rep["mesh"] = {{"points", mesh.points.size()}, {"n_r", mesh.n_r},         {"n_theta", mesh.n_theta},
                   {"r_max", mesh.r_max},          {"clipped", mesh.clipped}, {"empty_cells", mesh.empty_cells}};
    rep["max_residual"] = worst;
    rep["max_relative_residual"] = worst_relative;
    if (spec.integral_case == integrals::IntegralCase::min_energy) rep["max_ellipsoid_residual"] = ellipsoid;
    rep["symmetry"] = {{"z_reflection_max_relative_residual", reflect}, {"half_turn_max_relative_residual", half_turn}};
    rep["conic"] = {{"kind", std::string(surfaces::to_string(conic.kind))},
                    {"theta0", conic.theta0},
                    {"semi_axis_along", optional_json(conic.semi_axis_along)},
                    {"semi_axis_across", optional_json(conic.semi_axis_across)},
                    {"trace_points", trace_points},
                    {"max_fit_residual", conic_fit}};
    rep["mesh_within_tol"] = worst_relative <= cfg.tol.mesh_tol;
    write_json(cfg.out / "report.json", rep);
    return {0, rep};
}

Outcome cmd_verify(const Json& config) {
    const RunConfig cfg = parse_run_config(config);
    const Json sec = section(config, "verify");
    suites::SuiteOptions opt;
    opt.params = cfg.params;
    opt.seed = cfg.seed;
    opt.tol = cfg.tol;
    opt.relation_samples = static_cast<int>(count(sec, "relation_samples", 10000));
    opt.bracket_samples = static_cast<int>(count(sec, "bracket_samples", 1000));
    opt.pde_samples = static_cast<int>(count(sec, "pde_samples", 100));
    opt.harmonic_samples = static_cast<int>(count(sec, "harmonic_samples", 100));
    opt.corrupt_f1 = flag(sec, "corrupt_f1", false);

    std::vector<std::string> names(std::begin(suites::kSuiteNames), std::end(suites::kSuiteNames));
    if (sec.contains("suites")) {
        if (!sec.at("suites").is_array()) fail("'suites' must be an array of names");
        names = sec.at("suites").get<std::vector<std::string>>();
    }

    Json rep = report_header(cfg, "verify");
    rep["samples"] = {{"relation", opt.relation_samples},
                      {"brackets", opt.bracket_samples},
                      {"appendix", opt.pde_samples},
                      {"harmonicity", opt.harmonic_samples}};
    rep["corrupt_f1"] = opt.corrupt_f1;
    Json list = Json::array();
    bool all = true;
    for (const auto& name : names) {
        spdlog::info("verify: suite {}", name);
        suites::SuiteResult res;
        try {
            res = suites::run_suite(name, opt);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::invalid_argument) fail(e.what());
            throw;
        }
        Json checks = Json::array();
        for (const auto& c : res.checks) checks.push_back(check_json(c));
        list.push_back({{"name", res.name}, {"pass", res.pass()}, {"checks", checks}, {"notes", res.notes}});
        all = all && res.pass();
    }
    rep["suites"] = list;
    rep["pass"] = all;
    write_json(cfg.out / "report.json", rep);
    return {all ? 0 : static_cast<int>(ExitCode::verification_failure), rep};
}

Outcome cmd_special(const Json& config) {
    const RunConfig cfg = parse_run_config(config);
    const Json sec = section(config, "special");
    if (!sec.contains("kind") || !sec.at("kind").is_string()) fail("'special' needs a 'kind'");
    const auto kind = sec.at("kind").get<std::string>();
    Outcome out;
    if (kind == "stationary") {
        out = special_stationary(cfg, sec);
    } else if (kind == "heteroclinic") {
        out = special_heteroclinic(cfg, sec);
    } else if (kind == "radial") {
        out = special_radial(cfg, sec);
    } else {
        fail("unknown special kind '" + kind + "' (stationary, heteroclinic, radial)");
    }
    write_json(cfg.out / "report.json", out.report);
    return out;
}

Outcome cmd_sweep(const Json& config) {
    const RunConfig cfg = parse_run_config(config);
    const Json sec = section(config, "sweep");
    if (!sec.contains("grid") || !sec.at("grid").is_object() || sec.at("grid").empty()) {
        fail("'sweep' needs a nonempty 'grid' object");
    }
    std::vector<std::string> keys;
    std::vector<Json::json_pointer> pointers;
    std::vector<std::vector<Json>> axes;
    for (const auto& [key, values] : sec.at("grid").items()) {
        if (!values.is_array() || values.empty()) fail("grid axis '" + key + "' must be a nonempty array");
        keys.push_back(key);
        pointers.push_back(config_pointer(key));
        axes.emplace_back(values.begin(), values.end());
    }
    std::size_t cells = 1;
    for (const auto& a : axes) cells *= a.size();

    Json base = config;
    base.erase("sweep");
    std::vector<Json> cell_configs(cells);
    std::vector<std::vector<Json>> cell_values(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        Json doc = base;
        std::size_t rest = c;
        // Last axis varies fastest.
        std::vector<Json> values(axes.size());
        for (std::size_t a = axes.size(); a-- > 0;) {
            values[a] = axes[a][rest % axes[a].size()];
            rest /= axes[a].size();
        }
        for (std::size_t a = 0; a < axes.size(); ++a) doc[pointers[a]] = values[a];
        char name[32];
        std::snprintf(name, sizeof name, "cell_%03zu", c);
        doc["out"] = (cfg.out / name).string();
        cell_configs[c] = std::move(doc);
        cell_values[c] = std::move(values);
    }

    std::size_t threads = count(sec, "threads", 0);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, cells);
    std::vector<Outcome> results(cells);
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    for (std::size_t w = 0; w < threads; ++w) {
        workers.push_back(std::async(std::launch::async, [&] {
            for (std::size_t c = next++; c < cells; c = next++) {
                results[c] = guarded([&] { return cmd_simulate(cell_configs[c]); });
            }
        }));
    }
    for (auto& w : workers) w.get();

    std::string csv = "cell";
    for (const auto& k : keys) csv += ',' + k;
    csv += ",exit_code,termination,H,F1,F2,F3,max_drift,message\n";
    Json list = Json::array();
    std::size_t failed = 0;
    for (std::size_t c = 0; c < cells; ++c) {
        const auto& r = results[c].report;
        if (results[c].exit_code != 0) ++failed;
        char name[32];
        std::snprintf(name, sizeof name, "cell_%03zu", c);
        csv += name;
        for (const auto& v : cell_values[c]) csv += ',' + (v.is_number() ? fmt(v.get<double>()) : v.dump());
        csv += ',' + std::to_string(results[c].exit_code);
        const bool ran = r.contains("integrals");
        csv += ',' + (ran ? r["termination"].get<std::string>() : std::string("error"));
        for (const char* key : {"H", "F1", "F2", "F3"}) csv += ',' + (ran ? fmt(r["integrals"][key].get<double>()) : "");
        csv += ',' + (ran ? fmt(r["drift"]["max"].get<double>()) : "");
        std::string message = ran ? r["message"].get<std::string>() : r.value("error", "");
        std::replace(message.begin(), message.end(), ',', ';');
        csv += ',' + message + '\n';
        Json entry{{"cell", name}, {"exit_code", results[c].exit_code}};
        for (std::size_t a = 0; a < keys.size(); ++a) entry["values"][keys[a]] = cell_values[c][a];
        if (ran) {
            entry["termination"] = r["termination"];
            entry["max_drift"] = r["drift"]["max"];
        } else {
            entry["error"] = r.value("error", "");
        }
        list.push_back(entry);
    }
    write_text(cfg.out / "summary.csv", csv);

    Json rep = report_header(cfg, "sweep");
    rep["cells"] = list;
    rep["failed_cells"] = failed;
    write_json(cfg.out / "report.json", rep);
    const int code = failed == cells ? results.front().exit_code : 0;
    return {code, rep};
}

Outcome run_command(std::string_view command, const Json& config) {
    if (command == "simulate") return cmd_simulate(config);
    if (command == "surface") return cmd_surface(config);
    if (command == "verify") return cmd_verify(config);
    if (command == "special") return cmd_special(config);
    if (command == "sweep") return cmd_sweep(config);
    fail("unknown command '" + std::string(command) + "'");
}

void print_summary(const Json& report, std::ostream& os) {
    auto line = [&os](bool pass, const std::string& what) { os << (pass ? "PASS " : "FAIL ") << what << '\n'; };
    if (report.contains("suites")) {
        for (const auto& s : report["suites"]) {
            for (const auto& c : s["checks"]) {
                const bool at_most = c["kind"] == "at_most";
                line(c["pass"].get<bool>(), s["name"].get<std::string>() + "/" + c["name"].get<std::string>() + " " +
                                                fmt(c["measured"].get<double>()) + (at_most ? " <= " : " >= ") +
                                                fmt(c["threshold"].get<double>()));
            }
        }
    }
    if (report.contains("checks")) {
        for (const auto& c : report["checks"]) line(c["pass"].get<bool>(), c["description"].get<std::string>());
    }
    if (report.contains("recipes")) {
        for (const auto& r : report["recipes"]) line(r["pass"].get<bool>(), "recipe " + r["name"].get<std::string>());
    }
    if (report.contains("error")) os << "error: " << report["error"].get<std::string>() << '\n';
}

}  // namespace hkepler::cli
