// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "degsir/metrics.hpp"

namespace degsir {
namespace {

TEST(Totals, InitialScenarioHasSixHundredIndividuals) {
    const SimulationConfig cfg;
    const auto t = totals(initial_state(cfg, Region::One), initial_state(cfg, Region::Two), cfg.grid, 300.0);
    EXPECT_NEAR(t.population, 600.0, 1e-9);
    EXPECT_NEAR(t.s, 540.0, 1e-9);
    EXPECT_NEAR(t.i, 60.0, 1e-9);
    EXPECT_NEAR(t.region_population[0], 300.0, 1e-9);
    EXPECT_NEAR(t.region_population[1], 300.0, 1e-9);
    const auto doubled =
        totals(initial_state(cfg, Region::One), initial_state(cfg, Region::Two), cfg.grid, 600.0);
    EXPECT_NEAR(doubled.population, 1200.0, 1e-9);
}

TEST(Totals, ZeroState) {
    const TwoRegionGrid g;
    const RegionState z(g.n_cells_per_region);
    const auto t = totals(z, z, g, 300.0);
    EXPECT_EQ(t.population, 0.0);
    EXPECT_EQ(t.r, 0.0);
}

SimulationRecord constant_record(double infected) {
    SimulationRecord rec;
    rec.grid.n_cells_per_region = 4;
    rec.population_scale = 1.0;
    rec.t_final = 10.0;
    for (int k = 0; k < 3; ++k) {
        Frame f;
        f.time = k * 5.0;
        for (auto& st : f.states) {
            st = RegionState(4, f.time);
            for (std::size_t c = 0; c < 4; ++c) {
                st.s[c] = 1.0;
                st.i[c] = infected;
            }
        }
        rec.frames.push_back(f);
    }
    return rec;
}

TEST(Summarize, ConstantRecord) {
    const auto row = summarize(constant_record(0.25));
    EXPECT_DOUBLE_EQ(row.peak_infected, 0.5);  // 2 regions * 4 cells * 0.25 * dx
    EXPECT_DOUBLE_EQ(row.rest_of_peak_pct, 100.0);
    EXPECT_DOUBLE_EQ(row.rest_infected_pct, 20.0);  // 0.25 / 1.25
    EXPECT_EQ(row.lockdown_days, 0.0);
    EXPECT_EQ(row.lockdown_pct, 0.0);
}

TEST(Summarize, LockdownPercentageOfHorizon) {
    auto rec = constant_record(0.1);
    rec.lockdown_days = 2.5;
    EXPECT_DOUBLE_EQ(summarize(rec).lockdown_pct, 25.0);
}

TEST(Summarize, EmptyRecordThrows) {
    try {
        (void)summarize(SimulationRecord{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyRecord);
    }
}

TEST(Summarize, RestInfectedWithinBounds) {
    SimulationConfig cfg;
    cfg.grid.n_cells_per_region = 20;
    cfg.probe_cell = 0;
    cfg.t_final = 20.0;
    const auto row = summarize(run_simulation(cfg));
    EXPECT_GE(row.rest_infected_pct, 0.0);
    EXPECT_LE(row.rest_infected_pct, 100.0);
    EXPECT_LE(row.rest_of_peak_pct, 100.0);
}

}  // namespace
}  // namespace degsir
