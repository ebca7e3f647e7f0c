#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hkepler/geometry.hpp"
#include "hkepler/integrals.hpp"
#include "oracles.hpp"

using namespace hkepler;
using integrals::IntegralCase;

TEST(Integrals, ReferenceValues) {
    const PotentialParams k(1.0);
    const CylState s = geometry::to_cylindrical({{1, 0, 0}, 0.0, 0.1});
    const auto v = integrals::evaluate_integrals(s, k);
    EXPECT_NEAR(v.h, oracle::kRefH, 1e-15);
    EXPECT_NEAR(v.f1, 0.0, 1e-15);
    EXPECT_NEAR(v.f2, 0.99, 1e-15);
    EXPECT_NEAR(v.f3, oracle::kRefF3, 1e-15);
    EXPECT_NEAR(v.j, oracle::kRefJ, 1e-15);
    ASSERT_TRUE(v.theta0.has_value());
    EXPECT_NEAR(*v.theta0, 0.0, 1e-15);
    EXPECT_EQ(v.integral_case, IntegralCase::general);
}

TEST(Integrals, RelationHoldsEverywhere) {
    std::mt19937_64 rng(17);
    for (double kk : {0.5, 1.0, 2.0}) {
        const PotentialParams k(kk);
        for (int i = 0; i < 500; ++i) {
            const CylState s = oracle::random_state(rng);
            const auto v = integrals::evaluate_integrals(s, k);
            // The relation is between quantities of size ~ max(1, k^2, |H| F3).
            const double scale = std::max({1.0, kk * kk, std::abs(v.h * v.f3)});
            EXPECT_LE(std::abs(integrals::relation_residual(v, k)), 1e-12 * scale);
            EXPECT_NEAR(v.f1 * v.f1 + v.f2 * v.f2, v.j * v.j, 1e-12 * scale);
        }
    }
}

TEST(Integrals, F3FormsAgree) {
    std::mt19937_64 rng(19);
    const PotentialParams k(1.0);
    for (int i = 0; i < 500; ++i) {
        const CylState s = oracle::random_state(rng);
        const double a = integrals::f3(s, k);
        EXPECT_NEAR(a, integrals::f3_compact(s, k), 1e-12 * std::max(1.0, a));
        EXPECT_GE(integrals::f3_compact(s, k), 0.0);
    }
}

TEST(Integrals, RotationCovariance) {
    // Rotating theta by a leaves H and F3 alone and turns (F2, F1) by 2a.
    std::mt19937_64 rng(23);
    const PotentialParams k(1.0);
    const double a = 0.37;
    for (int i = 0; i < 50; ++i) {
        CylState s = oracle::random_state(rng);
        const auto v = integrals::evaluate_integrals(s, k);
        s.theta += a;
        const auto w = integrals::evaluate_integrals(s, k);
        EXPECT_NEAR(w.h, v.h, 1e-14);
        EXPECT_NEAR(w.f3, v.f3, 1e-12);
        EXPECT_NEAR(w.f2, std::cos(2 * a) * v.f2 - std::sin(2 * a) * v.f1, 1e-12);
        EXPECT_NEAR(w.f1, std::sin(2 * a) * v.f2 + std::cos(2 * a) * v.f1, 1e-12);
    }
}

TEST(Integrals, Classification) {
    const PotentialParams k(1.0);
    // Heteroclinic start: H = -1/4, F3 = 2, J = 0.
    const auto he = integrals::evaluate_integrals({std::sqrt(2.0), 0.0, 0.0, 0.0, 1.0}, k);
    EXPECT_NEAR(he.h, -0.25, 1e-15);
    EXPECT_NEAR(he.f3, 2.0, 1e-14);
    EXPECT_NEAR(he.j, 0.0, 1e-7);
    EXPECT_EQ(he.integral_case, IntegralCase::min_energy);
    EXPECT_FALSE(he.theta0.has_value());
    // Radial motion in the plane z = 0: F3 = 0.
    const auto ra = integrals::evaluate_integrals({0.7, 1.1, 0.0, 0.4, 0.0}, k);
    EXPECT_EQ(ra.f3, 0.0);
    EXPECT_EQ(ra.integral_case, IntegralCase::degenerate);
    ASSERT_TRUE(ra.theta0.has_value());
    EXPECT_NEAR(integrals::angle_distance_mod_pi(*ra.theta0, 1.1), 0.0, 1e-12);
}

TEST(Integrals, PhaseOffset) {
    EXPECT_NEAR(integrals::phase_offset(0.0, 1.0), 0.0, 1e-15);
    EXPECT_NEAR(integrals::phase_offset(1.0, 0.0), std::numbers::pi / 4, 1e-15);
    EXPECT_NEAR(integrals::phase_offset(-1.0, 0.0), 3 * std::numbers::pi / 4, 1e-15);
    const double t = integrals::phase_offset(0.0, -1.0);
    EXPECT_NEAR(t, std::numbers::pi / 2, 1e-15);
    EXPECT_NEAR(integrals::angle_distance_mod_pi(0.1, 0.1 + std::numbers::pi), 0.0, 1e-14);
    EXPECT_NEAR(integrals::angle_distance_mod_pi(0.0, 3.0), std::numbers::pi - 3.0, 1e-14);
}
