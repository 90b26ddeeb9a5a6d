// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <limits>

#include "degsir/model.hpp"

namespace degsir {
namespace {

TEST(TwoRegionGrid, DefaultGeometry) {
    const TwoRegionGrid g;
    EXPECT_DOUBLE_EQ(g.dx(), 1.0 / 302.0);
    EXPECT_DOUBLE_EQ(g.cell_center(Region::One, 0), 0.5 / 302.0);
    EXPECT_DOUBLE_EQ(g.cell_center(Region::Two, 0), 1.0 + 0.5 / 302.0);
    EXPECT_EQ(g.interface_cell(Region::One), 301u);
    EXPECT_EQ(g.interface_cell(Region::Two), 0u);
    EXPECT_EQ(g.outer_cell(Region::One), 0u);
    EXPECT_EQ(g.outer_cell(Region::Two), 301u);
    EXPECT_DOUBLE_EQ(g.face(Region::Two, 302), 2.0);
    EXPECT_DOUBLE_EQ(g.distance_from_outer(Region::Two, 1.75), 0.25);
}

TEST(SimulationConfig, DefaultsDescribeTheBaseScenario) {
    const SimulationConfig cfg;
    EXPECT_EQ(cfg.n_steps(), 24000u);
    EXPECT_DOUBLE_EQ(cfg.params.beta_12, 0.1);
    EXPECT_DOUBLE_EQ(cfg.params.mu_i, 0.13);
    EXPECT_DOUBLE_EQ(cfg.initial[0].s0, 0.8);
    EXPECT_DOUBLE_EQ(cfg.initial[0].i0, 0.2);
    EXPECT_DOUBLE_EQ(cfg.initial[1].s0, 1.0);
    EXPECT_TRUE(config_violations(cfg).empty());
}

TEST(ValidateConfig, NegativeStepNamesTheField) {
    SimulationConfig cfg;
    cfg.dt = -1.0;
    try {
        validate_config(cfg);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositiveStep);
        EXPECT_TRUE(e.names("dt"));
    }
}

TEST(ValidateConfig, ReportsEveryViolation) {
    SimulationConfig cfg;
    cfg.params.beta_1 = -0.1;
    cfg.params.i_threshold_2 = 0.0;
    cfg.grid.x_interface = 3.0;
    cfg.params.lambda_1 = 1.5;
    const auto v = config_violations(cfg);
    ASSERT_GE(v.size(), 4u);
    try {
        validate_config(cfg);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(e.names("beta_1"));
        EXPECT_TRUE(e.names("i_threshold_2"));
        EXPECT_TRUE(e.names("x_interface"));
        EXPECT_TRUE(e.names("lambda_1"));
        EXPECT_FALSE(e.names("beta_2"));
    }
}

TEST(ValidateConfig, HorizonMustBeAWholeNumberOfSteps) {
    SimulationConfig cfg;
    cfg.t_final = 0.01;
    EXPECT_THROW(validate_config(cfg), ConfigError);
    cfg.t_final = 0.0;
    EXPECT_NO_THROW(validate_config(cfg));
    EXPECT_EQ(cfg.n_steps(), 0u);
}

TEST(ValidateConfig, RejectsNonFiniteAndTinyGrids) {
    SimulationConfig cfg;
    cfg.grid.n_cells_per_region = 1;
    EXPECT_THROW(validate_config(cfg), ConfigError);
    cfg = SimulationConfig{};
    cfg.params.gamma_1 = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(validate_config(cfg), ConfigError);
    cfg = SimulationConfig{};
    cfg.grid.x_right = 2.5;
    EXPECT_THROW(validate_config(cfg), ConfigError);
    cfg = SimulationConfig{};
    cfg.probe_cell = 302;
    EXPECT_THROW(validate_config(cfg), ConfigError);
}

TEST(RegionState, FieldAccessAndSign) {
    RegionState st(3);
    st.field(Compartment::I)[1] = 2.0;
    EXPECT_EQ(st.i[1], 2.0);
    EXPECT_TRUE(st.nonnegative());
    st.r[2] = -1e-300;
    EXPECT_FALSE(st.nonnegative());
}

TEST(Error, MessageCarriesCodeOnce) {
    const Error e(ErrorCode::PositivityViolation, "cell 3");
    EXPECT_STREQ(e.what(), "PositivityViolation: cell 3");
    EXPECT_EQ(e.detail(), "cell 3");
}

}  // namespace
}  // namespace degsir
