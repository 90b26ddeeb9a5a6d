// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>

#include "degsir/errors.hpp"
#include "degsir/model.hpp"
#include "degsir/stepper.hpp"

namespace degsir {

/// Head counts (density integrated over the region, times the scale).
struct Totals {
    double population{0.0};
    double s{0.0};
    double i{0.0};
    double r{0.0};
    std::array<double, 2> region_population{0.0, 0.0};
};

inline Totals totals(const RegionState& state_1, const RegionState& state_2, const TwoRegionGrid& grid,
                     double scale) {
    Totals t;
    const double w = grid.dx() * scale;
    std::size_t idx = 0;
    for (const auto* st : {&state_1, &state_2}) {
        double s = 0.0;
        double i = 0.0;
        double r = 0.0;
        for (std::size_t k = 0; k < st->size(); ++k) {
            s += st->s[k];
            i += st->i[k];
            r += st->r[k];
        }
        t.s += w * s;
        t.i += w * i;
        t.r += w * r;
        t.region_population[idx++] = w * (s + i + r);
    }
    t.population = t.s + t.i + t.r;
    return t;
}

inline Totals totals(const Frame& f, const SimulationRecord& rec) {
    return totals(f.state(Region::One), f.state(Region::Two), rec.grid, rec.population_scale);
}

/// One row of the lambda-impact table.
struct SummaryRow {
    double total_population{0.0};
    double total_recovered{0.0};
    double peak_infected{0.0};
    /// Infected share of the population at t_final, in percent.
    double rest_infected_pct{0.0};
    double lockdown_days{0.0};
    double lockdown_pct{0.0};
    /// Final infected as a percentage of peak infected (alternative reading).
    double rest_of_peak_pct{0.0};
};

inline SummaryRow summarize(const SimulationRecord& rec) {
    if (rec.frames.empty()) throw Error(ErrorCode::EmptyRecord, "cannot summarize an empty record");
    SummaryRow row;
    double peak = 0.0;
    for (const auto& f : rec.frames) peak = std::max(peak, totals(f, rec).i);
    const Totals last = totals(rec.frames.back(), rec);
    row.total_population = last.population;
    row.total_recovered = last.r;
    row.peak_infected = peak;
    row.rest_infected_pct = last.population > 0.0 ? 100.0 * last.i / last.population : 0.0;
    row.rest_of_peak_pct = peak > 0.0 ? 100.0 * last.i / peak : 0.0;
    row.lockdown_days = rec.lockdown_days;
    row.lockdown_pct = rec.t_final > 0.0 ? 100.0 * rec.lockdown_days / rec.t_final : 0.0;
    return row;
}

}  // namespace degsir
