#include <cmath>

#include <gtest/gtest.h>

#include "hkepler/integrator.hpp"

using namespace hkepler;
using integrator::IntegratorConfig;
using integrator::Termination;

namespace {

// Radial motion in z = 0: r(t)^2 = r0^2 + 2 r0 p0 t + 2 H t^2 exactly.
double radial_oracle(double r0, double p0, double h, double t) {
    return std::sqrt(r0 * r0 + 2.0 * r0 * p0 * t + 2.0 * h * t * t);
}

}  // namespace

TEST(Integrator, RadialExactSolution) {
    const PotentialParams k(1.0);
    const CylState s0{1.0, 0.3, 0.0, 0.5, 0.0};
    const double h = 0.125 - 1.0;
    IntegratorConfig cfg;
    cfg.t_end = 0.5;
    const auto traj = integrator::integrate(s0, cfg, k);
    ASSERT_EQ(traj.termination, Termination::completed);
    for (const auto& smp : traj.samples) {
        EXPECT_NEAR(smp.state.r, radial_oracle(1.0, 0.5, h, smp.t), 1e-9);
        EXPECT_EQ(smp.state.z, 0.0);
        EXPECT_EQ(smp.state.theta, 0.3);
    }
}

TEST(Integrator, Rk4IsFourthOrder) {
    const PotentialParams k(1.0);
    const CylState s0{1.0, 0.0, 0.0, 0.5, 0.0};
    const double h = 0.125 - 1.0;
    auto err = [&](double dt) {
        const auto tr = integrator::integrate_fixed_rk4(s0, dt, 0.4, k);
        return std::abs(tr.samples.back().state.r - radial_oracle(1.0, 0.5, h, 0.4));
    };
    const double ratio = err(0.02) / err(0.01);
    EXPECT_NEAR(std::log2(ratio), 4.0, 0.3);
}

TEST(Integrator, ZeroDurationGivesOneSample) {
    IntegratorConfig cfg;
    cfg.t_end = 0.0;
    const auto traj = integrator::integrate({1.0, 0.0, 0.0, 0.0, 0.1}, cfg, PotentialParams(1.0));
    ASSERT_EQ(traj.samples.size(), 1u);
    EXPECT_EQ(traj.samples[0].t, 0.0);
    EXPECT_EQ(traj.termination, Termination::completed);
}

TEST(Integrator, SampleGrid) {
    IntegratorConfig cfg;
    cfg.t_end = 1.0;
    cfg.sample_interval = 0.1;
    const auto traj = integrator::integrate({1.0, 0.0, 0.0, 0.0, 0.1}, cfg, PotentialParams(1.0));
    ASSERT_EQ(traj.samples.size(), 11u);
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        EXPECT_NEAR(traj.samples[i].t, 0.1 * static_cast<double>(i), 1e-12);
    }
}

TEST(Integrator, ReferenceDrift) {
    IntegratorConfig cfg;
    cfg.t_end = 20.0;
    const auto traj = integrator::integrate({1.0, 0.0, 0.0, 0.0, 0.1}, cfg, PotentialParams(1.0));
    EXPECT_EQ(traj.termination, Termination::completed);
    EXPECT_LE(traj.drift.max(), 1e-6);
    const auto rep = integrator::drift_report(traj);
    ASSERT_TRUE(rep.boundedness.has_value());
    EXPECT_TRUE(rep.boundedness->holds);
    EXPECT_NEAR(rep.boundedness->bound, 1.0 / 0.995, 1e-15);
}

TEST(Integrator, CollisionStopsAtSingularity) {
    // p_S = 0 sends the point straight into the origin at t = 1/sqrt(2).
    IntegratorConfig cfg;
    cfg.t_end = 2.0;
    const auto traj = integrator::integrate({1.0, 0.0, 0.0, 0.0, 0.0}, cfg, PotentialParams(1.0));
    EXPECT_EQ(traj.termination, Termination::singularity_approach);
    ASSERT_FALSE(traj.samples.empty());
    EXPECT_LT(traj.samples.back().t, 1.0 / std::sqrt(2.0));
    EXPECT_GT(traj.samples.back().t, 0.6);
    EXPECT_FALSE(traj.message.empty());
}

TEST(Integrator, ConfigValidation) {
    IntegratorConfig cfg;
    cfg.rel_tol = 0.0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.t_end = -1.0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.sample_interval = 0.0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.min_step = 1.0;
    cfg.max_step = 0.1;
    EXPECT_THROW(cfg.validate(), Error);
    EXPECT_NO_THROW(IntegratorConfig{}.validate());
    EXPECT_THROW(integrator::step_fixed_rk4({1, 0, 0, 0, 0.1}, 0.0, PotentialParams(1.0)), Error);
}

TEST(Integrator, ProjectionReturnsToLevelSet) {
    const PotentialParams k(1.0);
    const CylState s{1.0, 0.2, 0.1, 0.3, 0.4};
    const auto target = integrals::evaluate_integrals(s, k);
    CylState moved = s;
    moved.p_r += 1e-4;
    moved.z -= 1e-4;
    const CylState back = integrator::project_to_level_set(moved, target, k);
    const auto v = integrals::evaluate_integrals(back, k);
    EXPECT_NEAR(v.h, target.h, 1e-12);
    EXPECT_NEAR(v.f1, target.f1, 1e-12);
    EXPECT_NEAR(v.f2, target.f2, 1e-12);
    EXPECT_NEAR(v.f3, target.f3, 1e-12);

    IntegratorConfig cfg;
    cfg.t_end = 5.0;
    cfg.rel_tol = 1e-6;
    cfg.abs_tol = 1e-8;
    const auto loose = integrator::integrate(s, cfg, k);
    cfg.project = true;
    const auto projected = integrator::integrate(s, cfg, k);
    EXPECT_LT(projected.drift.max(), loose.drift.max());
}
