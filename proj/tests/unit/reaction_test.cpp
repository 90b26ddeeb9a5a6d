// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "degsir/reaction.hpp"

namespace degsir {
namespace {

TEST(Reaction, HandComputedRegionOneRates) {
    const EpidemicParams p;
    // S=0.8, I=0.2, R=0, no foreign infected, N=300:
    //   infections = 0.05 * 0.2 * 0.8 = 0.008
    //   dS = 0.005 * 300 - 0.05 * 0.8 - 0.008 = 1.452
    //   dI = 0.008 - (0.2 + 0.13) * 0.2 = -0.058
    //   dR = 0.2 * 0.2 = 0.04
    const auto d = reaction_eval({{0.8, 0.2, 0.0}, {1.0, 0.0, 0.0}, 300.0}, p, Region::One);
    EXPECT_NEAR(d.s, 1.452, 1e-15);
    EXPECT_NEAR(d.i, -0.058, 1e-15);
    EXPECT_NEAR(d.r, 0.04, 1e-15);
}

TEST(Reaction, ForeignInfectedDriveCrossInfection) {
    EpidemicParams p;
    p.big_lambda_2 = 0.0;
    // Region 2 fully susceptible, region 1 infected 0.2: beta_21 * 0.2 * 1.
    const auto d = reaction_eval({{1.0, 0.0, 0.0}, {0.8, 0.2, 0.0}, 300.0}, p, Region::Two);
    EXPECT_NEAR(d.i, 0.02, 1e-15);
    EXPECT_NEAR(d.s, -0.05 - 0.02, 1e-15);
}

TEST(Reaction, EmptyStateWithoutBirthsIsStationary) {
    EpidemicParams p;
    p.big_lambda_1 = 0.0;
    const auto d = reaction_eval({{}, {}, 300.0}, p, Region::One);
    EXPECT_EQ(d, (Triple{0.0, 0.0, 0.0}));
}

TEST(Exchange, IsConservativeAndAntisymmetric) {
    const Triple u1{0.8, 0.2, 0.1};
    const Triple u2{1.0, 0.05, 0.0};
    const auto g = exchange_eval(u1, u2, 0.3, 0.1);
    const auto total = g.into_1 + g.into_2;
    EXPECT_EQ(total.s, 0.0);
    EXPECT_EQ(total.i, 0.0);
    EXPECT_NEAR(g.into_1.s, 0.1 * 1.0 - 0.3 * 0.8, 1e-15);
}

TEST(PairCells, IdentityInsideRangeAndThrowsOutside) {
    const TwoRegionGrid g;
    EXPECT_EQ(pair_cells(g, 17), 17u);
    try {
        (void)pair_cells(g, 302);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
    }
}

}  // namespace
}  // namespace degsir
