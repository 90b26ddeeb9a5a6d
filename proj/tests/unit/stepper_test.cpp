// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "degsir/metrics.hpp"
#include "degsir/stepper.hpp"

namespace degsir {
namespace {

double mass(const RegionState& st) {
    double s = 0.0;
    for (auto c : kCompartments) {
        for (double v : st.field(c)) s += v;
    }
    return s;
}

SimulationConfig small_config() {
    SimulationConfig cfg;
    cfg.grid.n_cells_per_region = 16;
    cfg.probe_cell = 3;
    cfg.t_final = 5.0;
    cfg.output_stride = 40;
    return cfg;
}

TEST(InitialState, UniformAndQuarterSine) {
    SimulationConfig cfg = small_config();
    const auto u = initial_state(cfg, Region::One);
    EXPECT_EQ(u.s[5], 0.8);
    EXPECT_EQ(u.i[15], 0.2);
    EXPECT_DOUBLE_EQ(initial_population(cfg, Region::One), 300.0);

    cfg.initial_profile = InitialProfile::QuarterSine;
    const auto q = initial_state(cfg, Region::Two);
    // Region 2's outer end is x = 2, so the last cell is the smallest.
    EXPECT_LT(q.s[15], q.s[0]);
    EXPECT_NEAR(q.s[15], std::sin(0.5 * std::numbers::pi * (0.5 / 16)), 1e-15);
    EXPECT_NEAR(initial_population(cfg, Region::Two), 300.0 * 2.0 / std::numbers::pi, 1e-12);
}

TEST(BirthPopulation, DynamicUsesMeanDensity) {
    SimulationConfig cfg = small_config();
    cfg.birth_population = BirthPopulation::Dynamic;
    auto st = initial_state(cfg, Region::One);
    EXPECT_NEAR(birth_population(cfg, Region::One, st), 1.0, 1e-14);
}

TEST(CoupledStepper, PureDiffusionWithClosedInterfaceConservesMass) {
    SimulationConfig cfg = small_config();
    cfg.reactions = false;
    cfg.exchange = false;
    cfg.interface = InterfaceControl::Closed;
    cfg.outer_sigma = OuterSigma::Face;
    cfg.initial_profile = InitialProfile::QuarterSine;
    cfg.params.lambda_1 = cfg.params.lambda_2 = 1.0;
    CoupledStepper stepper(cfg);
    auto s1 = initial_state(cfg, Region::One);
    auto s2 = initial_state(cfg, Region::Two);
    const double m1 = mass(s1);
    const double m2 = mass(s2);
    for (int k = 0; k < 200; ++k) {
        auto out = stepper.step(s1, s2, k * cfg.dt);
        s1 = out.state_1;
        s2 = out.state_2;
    }
    EXPECT_NEAR(mass(s1), m1, 1e-12 * m1);
    EXPECT_NEAR(mass(s2), m2, 1e-12 * m2);
    EXPECT_DOUBLE_EQ(stepper.ledger().lockdown_days, 200 * cfg.dt);
}

TEST(CoupledStepper, InterfaceTransferMovesMassBetweenRegions) {
    SimulationConfig cfg = small_config();
    cfg.reactions = false;
    cfg.exchange = false;
    cfg.diffusion = false;
    cfg.interface = InterfaceControl::Open;
    CoupledStepper stepper(cfg);
    const auto s1 = initial_state(cfg, Region::One);
    const auto s2 = initial_state(cfg, Region::Two);
    const auto out = stepper.step(s1, s2, 0.0);
    const double before = mass(s1) + mass(s2);
    const double after = mass(out.state_1) + mass(out.state_2);
    EXPECT_NE(mass(out.state_1), mass(s1));
    // Outflow is implicit and inflow explicit. Region 2 receives region 1's
    // new interface value, but region 1 received region 2's old one, so the
    // step leaks exactly dt/dx * out_2 * (u2_old - u2_new) at the interface.
    const std::size_t g2 = cfg.grid.interface_cell(Region::Two);
    double defect = 0.0;
    for (auto c : kCompartments) defect += s2.field(c)[g2] - out.state_2.field(c)[g2];
    defect *= cfg.dt / cfg.grid.dx() * out.coupling.out_2;
    EXPECT_NE(defect, 0.0);
    EXPECT_NEAR(after - before, defect, 1e-12);
}

TEST(CoupledStepper, ReactionOnlyMatchesExplicitEuler) {
    SimulationConfig cfg = small_config();
    cfg.diffusion = false;
    cfg.exchange = false;
    cfg.interface = InterfaceControl::Closed;
    CoupledStepper stepper(cfg);
    const auto s1 = initial_state(cfg, Region::One);
    const auto s2 = initial_state(cfg, Region::Two);
    const auto out = stepper.step(s1, s2, 0.0);
    const auto d = reaction_eval({{0.8, 0.2, 0.0}, {1.0, 0.0, 0.0}, 300.0}, cfg.params, Region::One);
    EXPECT_NEAR(out.state_1.s[4], 0.8 + cfg.dt * d.s, 1e-15);
    EXPECT_NEAR(out.state_1.i[4], 0.2 + cfg.dt * d.i, 1e-15);
}

TEST(CoupledStepper, ExchangeDefectComesFromSequentialCoupling) {
    SimulationConfig cfg = small_config();
    cfg.diffusion = false;
    cfg.reactions = false;
    cfg.interface = InterfaceControl::Closed;
    cfg.params.lambda_1 = 0.3;
    cfg.params.lambda_2 = 0.1;
    auto s1 = initial_state(cfg, Region::One);
    auto s2 = initial_state(cfg, Region::Two);
    CoupledStepper stepper(cfg);
    for (int k = 0; k < 50; ++k) {
        const double before = mass(s1) + mass(s2);
        auto out = stepper.step(s1, s2, k * cfg.dt);
        // Region 2 exchanges against region 1's new state, region 1 against
        // region 2's old one: the total changes by dt * lambda_1 * (u1_new - u1_old).
        const double expected = cfg.dt * cfg.params.lambda_1 * (mass(out.state_1) - mass(s1));
        s1 = out.state_1;
        s2 = out.state_2;
        EXPECT_NEAR(mass(s1) + mass(s2) - before, expected, 1e-12);
    }
}

TEST(RunSimulation, RecordsInitialStrideAndFinalFrames) {
    SimulationConfig cfg = small_config();
    cfg.t_final = 1.25;  // 100 steps, stride 40 -> steps 0, 40, 80, 100
    const auto rec = run_simulation(cfg);
    ASSERT_EQ(rec.frames.size(), 4u);
    EXPECT_DOUBLE_EQ(rec.frames[1].time, 0.5);
    EXPECT_DOUBLE_EQ(rec.frames.back().time, 1.25);
    for (const auto& f : rec.frames) {
        EXPECT_TRUE(f.state(Region::One).nonnegative());
        EXPECT_TRUE(f.state(Region::Two).nonnegative());
    }
}

TEST(RunSimulation, ZeroHorizonKeepsOnlyTheInitialFrame) {
    SimulationConfig cfg = small_config();
    cfg.t_final = 0.0;
    const auto rec = run_simulation(cfg);
    ASSERT_EQ(rec.frames.size(), 1u);
    EXPECT_EQ(rec.frames[0].state(Region::One), initial_state(cfg, Region::One));
}

TEST(RunSimulation, PositivityFailureReportsTimeOnce) {
    SimulationConfig cfg = small_config();
    cfg.cross_diffusion = CrossDiffusion::Paired;
    cfg.params.lambda_1 = cfg.params.lambda_2 = 1.0;
    try {
        (void)run_simulation(cfg);
        FAIL() << "expected a positivity failure";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PositivityViolation);
        const std::string msg = e.what();
        EXPECT_EQ(msg.find("PositivityViolation"), 0u);
        EXPECT_EQ(msg.find("PositivityViolation", 1), std::string::npos);
        EXPECT_NE(msg.find("t="), std::string::npos);
    }
}

TEST(RunSimulation, InvalidConfigThrowsConfigError) {
    SimulationConfig cfg = small_config();
    cfg.params.mu_s = -1.0;
    EXPECT_THROW(run_simulation(cfg), ConfigError);
}

TEST(LockdownSignals, PrevalenceAndTotals) {
    SimulationConfig cfg = small_config();
    const auto s1 = initial_state(cfg, Region::One);
    const auto s2 = initial_state(cfg, Region::Two);
    cfg.lockdown_signal = LockdownSignal::RegionalPrevalence;
    auto sig = lockdown_signals(cfg, s1, s2);
    EXPECT_NEAR(sig[0], 0.2, 1e-15);
    EXPECT_EQ(sig[1], 0.0);
    cfg.lockdown_signal = LockdownSignal::RegionalTotal;
    sig = lockdown_signals(cfg, s1, s2);
    EXPECT_NEAR(sig[0], 0.2, 1e-14);
    cfg.lockdown_signal = LockdownSignal::Interface;
    sig = lockdown_signals(cfg, s1, s2);
    EXPECT_EQ(sig[0], 0.2);
}

}  // namespace
}  // namespace degsir
