#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hkepler/dynamics.hpp"
#include "hkepler/geometry.hpp"
#include "hkepler/integrals.hpp"
#include "hkepler/integrator.hpp"
#include "oracles.hpp"

using namespace hkepler;

namespace {

const CylState kRef{1.0, 0.0, 0.0, 0.0, 0.1};

}  // namespace

TEST(Dynamics, ReferenceVectorField) {
    const auto v = dynamics::vector_field(kRef, PotentialParams(1.0));
    EXPECT_DOUBLE_EQ(v.dr, 0.0);
    EXPECT_DOUBLE_EQ(v.dtheta, 0.1);
    EXPECT_DOUBLE_EQ(v.dz, 0.05);
    EXPECT_NEAR(v.dp_r, -1.99, 1e-15);
    EXPECT_DOUBLE_EQ(v.dp_s, 0.0);
    EXPECT_NEAR(dynamics::hamiltonian(kRef, PotentialParams(1.0)), oracle::kRefH, 1e-15);
}

TEST(Dynamics, ConstraintHolds) {
    std::mt19937_64 rng(5);
    const PotentialParams k(1.0);
    for (int i = 0; i < 100; ++i) {
        const CylState s = oracle::random_state(rng);
        const auto v = dynamics::vector_field(s, k);
        EXPECT_NEAR(v.dz, 0.5 * s.r * s.r * v.dtheta, 1e-14);
    }
}

TEST(Dynamics, SingularStatesRejected) {
    const PotentialParams k(1.0);
    EXPECT_THROW(dynamics::vector_field({0.0, 0.0, 1.0, 0.0, 0.0}, k), Error);
    EXPECT_THROW(dynamics::require_admissible({1e-13, 0.0, 0.5, 0.0, 0.0}), Error);
}

TEST(Dynamics, MatchesCartesianFlow) {
    // Short flows from random states: reduced integrator vs a hand-rolled RK4
    // on the Cartesian nonholonomic equations.
    std::mt19937_64 rng(9);
    const PotentialParams k(1.0);
    integrator::IntegratorConfig cfg;
    cfg.t_end = 0.5;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    for (int i = 0; i < 10; ++i) {
        const CylState s = oracle::random_state(rng);
        const CartState c = geometry::from_cylindrical(s);
        const auto ref = oracle::cartesian_flow({c.point.x, c.point.y, c.point.z, c.p_x, c.p_y}, cfg.t_end, 5000, 1.0);
        const auto traj = integrator::integrate(s, cfg, k);
        if (traj.termination != integrator::Termination::completed) continue;
        const CartState got = geometry::from_cylindrical(traj.samples.back().state);
        EXPECT_NEAR(got.point.x, ref[0], 1e-8);
        EXPECT_NEAR(got.point.y, ref[1], 1e-8);
        EXPECT_NEAR(got.point.z, ref[2], 1e-8);
        EXPECT_NEAR(got.p_x, ref[3], 1e-8);
        EXPECT_NEAR(got.p_y, ref[4], 1e-8);
    }
}

TEST(Dynamics, BracketWithHamiltonianIsTimeDerivative) {
    std::mt19937_64 rng(13);
    const PotentialParams k(1.0);
    const auto h = dynamics::hamiltonian_observable(k);
    for (int i = 0; i < 20; ++i) {
        const CylState s = oracle::random_state(rng);
        const auto v = dynamics::vector_field(s, k);
        for (int c = 0; c < 5; ++c) {
            const double got = dynamics::almost_poisson(dynamics::coordinate_observable(c), h, s, k);
            EXPECT_NEAR(got, v.as_array()[static_cast<std::size_t>(c)], 1e-7 * std::max(1.0, std::abs(got)));
        }
        EXPECT_NEAR(dynamics::almost_poisson(h, h, s, k), 0.0, 1e-9);
    }
}

TEST(Dynamics, BracketIsAntisymmetric) {
    const PotentialParams k(1.0);
    const CylState s{0.8, 0.4, -0.3, 0.2, -0.6};
    const auto f = integrals::f3_observable(k);
    const auto g = dynamics::coordinate_observable(0);
    EXPECT_NEAR(dynamics::almost_poisson(f, g, s, k), -dynamics::almost_poisson(g, f, s, k), 1e-12);
}
