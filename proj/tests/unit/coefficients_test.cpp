// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "degsir/coefficients.hpp"

namespace degsir {
namespace {

TEST(Sigma, VanishesAtTheOuterEnds) {
    const DiffusionField f;
    EXPECT_EQ(sigma_eval(f, 0.0, 10.0), 0.0);
    EXPECT_EQ(sigma_eval(f, 2.0, 10.0), 0.0);
}

TEST(Sigma, PeaksAtTheInterfaceAtReferenceTime) {
    const DiffusionField f;
    // lambda * (2 - 1) * 1 * exp(0)
    EXPECT_DOUBLE_EQ(sigma_eval(f, 1.0, 50.0), 0.01);
    // exp(-0.01 * (0 - 50)) = exp(0.5)
    EXPECT_NEAR(sigma_eval(f, 0.5, 0.0), 0.01 * 1.5 * 0.5 * std::exp(0.5), 1e-15);
}

TEST(Sigma, OutsideDomainThrows) {
    const DiffusionField f;
    try {
        (void)sigma_eval(f, 2.5, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfDomain);
    }
}

TEST(Sigma, ConstantProfileIgnoresPositionAndTime) {
    DiffusionField f;
    f.profile = SigmaProfile::Constant;
    f.constant_value = 0.3;
    EXPECT_EQ(sigma_eval(f, 0.0, 0.0), 0.3);
    EXPECT_EQ(sigma_eval(f, 1.7, 200.0), 0.3);
    EXPECT_EQ(sigma_dy(f, 1.0, 0.0), 0.0);
}

TEST(Sigma, SlopeMatchesFiniteDifference) {
    const DiffusionField f;
    const double h = 1e-6;
    const double fd = (sigma_eval(f, 0.7 + h, 30.0) - sigma_eval(f, 0.7 - h, 30.0)) / (2 * h);
    EXPECT_NEAR(sigma_dy(f, 0.7, 30.0), fd, 1e-9);
}

TEST(Sigma, FieldFollowsRegionLambda) {
    SimulationConfig cfg;
    cfg.params.lambda_1 = 0.2;
    cfg.params.lambda_2 = 0.4;
    EXPECT_DOUBLE_EQ(diffusion_field(cfg, Region::One).lambda_scale, 0.2);
    EXPECT_DOUBLE_EQ(diffusion_field(cfg, Region::Two).lambda_scale, 0.4);
}

TEST(LambdaField, ZeroOnlyAtOuterBoundary) {
    const SimulationConfig cfg;
    const auto l1 = lambda_field(cfg, Region::One);
    EXPECT_EQ(lambda_eval(l1, 0.0), 0.0);
    EXPECT_EQ(lambda_eval(l1, 0.5), 0.01);
    const auto l2 = lambda_field(cfg, Region::Two);
    EXPECT_EQ(lambda_eval(l2, 2.0), 0.0);
    EXPECT_EQ(lambda_eval(l2, 1.0), 0.01);
}

TEST(WeakDegeneracy, InteriorPointIsFinite) {
    const DiffusionField f;
    const auto rep = weak_degeneracy_check(f, 50.0, 1.0, 0.1, 16, 0.0, 1.0);
    EXPECT_TRUE(rep.finite);
    // Window [0.9, 1.0] x [49.9, 50.1]: sigma ~ 0.01 * y (2 - y) ~ 0.01, so
    // the integral is about 0.2 * 0.1 / 0.01 = 2.
    EXPECT_NEAR(rep.value, 2.0, 0.05);
}

TEST(WeakDegeneracy, DegeneratePointIsNotFinite) {
    const DiffusionField f;
    const auto rep = weak_degeneracy_check(f, 50.0, 0.0, 0.1, 16, 0.0, 1.0);
    // 1/sigma ~ 1/y is not integrable at 0; refining keeps increasing it.
    EXPECT_GT(rep.refined_value, rep.value);
}

TEST(WeakDegeneracy, ZeroEverywhereThrows) {
    DiffusionField f;
    f.profile = SigmaProfile::Constant;
    f.constant_value = 0.0;
    EXPECT_THROW(weak_degeneracy_check(f, 0.0, 0.5, 0.1, 4, 0.0, 1.0), Error);
}

}  // namespace
}  // namespace degsir
