#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hkepler/geometry.hpp"
#include "hkepler/potential.hpp"

using namespace hkepler;

namespace {

double log_ratio(double a, double b, double lambda) { return std::log(std::abs(a / b)) / std::log(lambda); }

}  // namespace

TEST(Potential, KnownValues) {
    const PotentialParams k1(1.0);
    EXPECT_DOUBLE_EQ(potential::potential_u(CartPoint{1, 0, 0}, k1), -1.0);
    EXPECT_DOUBLE_EQ(potential::potential_u(CartPoint{0, 0, 1}, k1), -0.25);
    EXPECT_DOUBLE_EQ(potential::potential_u(CartPoint{0, 0, -1}, PotentialParams(3.0)), -0.75);
    EXPECT_DOUBLE_EQ(potential::gauge_rho(CartPoint{0, 0, 1}), 2.0);
    EXPECT_DOUBLE_EQ(potential::potential_u(CylPoint{2.0, 1.0, 0.0}, k1), -0.25);
}

TEST(Potential, OriginIsSingular) {
    try {
        (void)potential::potential_u(CartPoint{0, 0, 0}, PotentialParams(1.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::origin_singularity);
    }
    EXPECT_THROW(potential::sublaplacian_residual({0, 0, 0}, PotentialParams(1.0)), Error);
    EXPECT_THROW(potential::sublaplacian_residual({1e-3, 0, 0}, PotentialParams(1.0), 1e-3), Error);
}

TEST(Potential, InvalidCoupling) {
    EXPECT_THROW(PotentialParams(0.0), Error);
    EXPECT_THROW(PotentialParams(-1.0), Error);
    EXPECT_THROW(PotentialParams(std::nan("")), Error);
}

TEST(Potential, HomogeneousOfDegreeMinusTwo) {
    const PotentialParams k(1.3);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const CartPoint p{u(rng), u(rng), u(rng)};
        for (double lambda : {0.25, 3.0}) {
            const double lhs = potential::potential_u(geometry::dilate(lambda, p), k);
            EXPECT_NEAR(lhs, potential::potential_u(p, k) / (lambda * lambda), 1e-12 * std::abs(lhs));
        }
    }
}

TEST(Potential, RotationInvariant) {
    const PotentialParams k(1.0);
    const CartPoint p{0.7, -0.2, 0.4};
    const double a = 0.9;
    const CartPoint q{std::cos(a) * p.x - std::sin(a) * p.y, std::sin(a) * p.x + std::cos(a) * p.y, p.z};
    EXPECT_NEAR(potential::potential_u(p, k), potential::potential_u(q, k), 1e-15);
}

TEST(SubLaplacian, PolynomialOracles) {
    // X = dx - (y/2) dz, Y = dy + (x/2) dz applied twice by hand.
    const CartPoint p{0.6, -0.8, 0.3};
    auto xz = [](const CartPoint& q) { return q.x * q.z; };
    auto r2 = [](const CartPoint& q) { return q.x * q.x + q.y * q.y; };
    auto z = [](const CartPoint& q) { return q.z; };
    auto z2 = [](const CartPoint& q) { return q.z * q.z; };
    EXPECT_NEAR(potential::sublaplacian(xz, p, 1e-3), -p.y, 1e-8);
    EXPECT_NEAR(potential::sublaplacian(r2, p, 1e-3), 4.0, 1e-8);
    EXPECT_NEAR(potential::sublaplacian(z, p, 1e-3), 0.0, 1e-8);
    // X^2 z^2 = y^2/2, Y^2 z^2 = x^2/2
    EXPECT_NEAR(potential::sublaplacian(z2, p), 0.5 * (p.x * p.x + p.y * p.y), 1e-7);
}

TEST(SubLaplacian, PotentialIsHarmonic) {
    const PotentialParams k(1.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    int checked = 0;
    while (checked < 200) {
        const CartPoint p{u(rng), u(rng), u(rng)};
        if (potential::gauge_rho(p) < 0.2) continue;
        const double rel = std::abs(potential::sublaplacian_residual(p, k)) / std::abs(potential::potential_u(p, k));
        EXPECT_LE(rel, 1e-4);
        ++checked;
    }
}

TEST(SubLaplacian, GaugeStepsFollowDilations) {
    const PotentialParams k(1.0);
    const CartPoint p{0.9, 0.3, 0.2};
    const double base = potential::sublaplacian_residual(p, k);
    for (double lambda : {0.5, 2.0, 8.0}) {
        const double scaled = potential::sublaplacian_residual(geometry::dilate(lambda, p), k);
        EXPECT_NEAR(log_ratio(scaled, base, lambda), -4.0, 1e-6);
    }
}

TEST(SubLaplacian, FixedStepScalingIsNotClean) {
    // With one step everywhere the truncation error mixes powers of rho, so
    // the apparent exponent is steeper than -4 and drifts with lambda.
    const PotentialParams k(1.0);
    const CartPoint p{0.9, 0.3, 0.2};
    const double h = 1e-3;
    const double base = potential::sublaplacian_residual(p, k, h);
    const double e1 = log_ratio(potential::sublaplacian_residual(geometry::dilate(1.5, p), k, h), base, 1.5);
    const double e8 = log_ratio(potential::sublaplacian_residual(geometry::dilate(8.0, p), k, h), base, 8.0);
    EXPECT_LT(e1, -5.5);
    EXPECT_GT(e1, -8.5);
    EXPECT_LT(e8, -5.5);
    EXPECT_GT(e8, e1);
}

TEST(SubLaplacian, SecondOrderInStep) {
    const PotentialParams k(1.0);
    const CartPoint p{1.0, 0.5, 0.3};
    const double coarse = potential::sublaplacian_residual(p, k, 0.02);
    const double fine = potential::sublaplacian_residual(p, k, 0.01);
    EXPECT_NEAR(std::log2(coarse / fine), 2.0, 0.1);
}

TEST(SubLaplacian, WrongGaugeIsNotHarmonic) {
    const PotentialParams k(1.0);
    const auto control = potential::potential_with_z_weight(k, 1.0 / 16.0);
    const CartPoint p{0.8, 0.1, 0.4};
    const double rel = std::abs(potential::sublaplacian(control, p)) / std::abs(control(p));
    EXPECT_GT(rel, 1e-2);
    const auto same = potential::potential_with_z_weight(k, 16.0);
    EXPECT_NEAR(same(p), potential::potential_u(p, k), 1e-15);
}
