// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "degsir/errors.hpp"
#include "degsir/model.hpp"

namespace degsir {

enum class InterfaceMode { RobinOpen, NeumannClosed };

constexpr const char* to_string(InterfaceMode m) {
    return m == InterfaceMode::RobinOpen ? "RobinOpen" : "NeumannClosed";
}

/// Mobility rate alpha(I), the threshold direction rule and the lockdown switch.
struct MobilityPolicy {
    AlphaForm alpha_form{AlphaForm::RationalDecay};
    std::array<double, 2> i_threshold{8.0, 8.0};
    double lockdown_trigger{0.25};
    double alpha_floor{0.0};
    double reopen_delay{0.0};
    LockdownSignal signal{LockdownSignal::RegionalPrevalence};
    InterfaceControl control{InterfaceControl::Switching};

    [[nodiscard]] double threshold(Region r) const { return i_threshold[index_of(r)]; }
};

inline MobilityPolicy mobility_policy(const SimulationConfig& cfg) {
    MobilityPolicy p;
    p.alpha_form = cfg.alpha_form;
    p.i_threshold = {cfg.params.i_threshold_1, cfg.params.i_threshold_2};
    p.lockdown_trigger = cfg.lockdown_trigger;
    p.alpha_floor = cfg.alpha_floor;
    p.reopen_delay = cfg.reopen_delay;
    p.signal = cfg.lockdown_signal;
    p.control = cfg.interface;
    return p;
}

/// Lipschitz constant of alpha on [0, inf): max |d/dI 1/(1+I^2)| = 3*sqrt(3)/8.
constexpr double alpha_lipschitz(AlphaForm form) {
    return form == AlphaForm::RationalDecay ? 0.649519052838329 : 1.0;
}

/// alpha(I) before the floor is applied.
inline double alpha_raw(AlphaForm form, double i_value) {
    return form == AlphaForm::RationalDecay ? 1.0 / (1.0 + i_value * i_value) : std::exp(-i_value);
}

inline double alpha_eval(const MobilityPolicy& p, double i_value) {
    if (!(i_value >= 0.0)) {
        throw Error(ErrorCode::NegativeInfected, "alpha requires a non-negative infected density");
    }
    const double a = alpha_raw(p.alpha_form, i_value);
    return a < p.alpha_floor ? 0.0 : a;
}

/// alpha^j(I): +alpha(I) if I >= I_th^j, -alpha(I) otherwise.
inline double signed_alpha(const MobilityPolicy& p, double i_local, Region region_j) {
    const double a = alpha_eval(p, i_local);
    return i_local >= p.threshold(region_j) ? a : -a;
}

struct LockdownLedger {
    double lockdown_days{0.0};
    bool closed{false};
    /// Time the closure condition has been clear while still closed.
    double clear_for{0.0};
};

/// Decides the interface mode for the next step of length dt from the two
/// region signals and accumulates closed time into the ledger.
inline InterfaceMode lockdown_update(const MobilityPolicy& p, double signal_1, double signal_2,
                                     double dt, LockdownLedger& ledger) {
    bool closed = false;
    switch (p.control) {
    case InterfaceControl::Open: closed = false; break;
    case InterfaceControl::Closed: closed = true; break;
    case InterfaceControl::Switching: {
        const double peak = std::max(signal_1, signal_2);
        // The alpha floor only makes sense when the signal is a density.
        const bool density_signal =
            p.signal == LockdownSignal::Interface || p.signal == LockdownSignal::RegionalTotal;
        const bool condition =
            peak >= p.lockdown_trigger ||
            (density_signal && alpha_raw(p.alpha_form, std::max(peak, 0.0)) <= p.alpha_floor);
        if (condition) {
            closed = true;
            ledger.clear_for = 0.0;
        } else if (ledger.closed && ledger.clear_for < p.reopen_delay) {
            closed = true;
            ledger.clear_for += dt;
        } else {
            closed = false;
            ledger.clear_for = 0.0;
        }
        break;
    }
    }
    ledger.closed = closed;
    if (closed) ledger.lockdown_days += dt;
    return closed ? InterfaceMode::NeumannClosed : InterfaceMode::RobinOpen;
}

}  // namespace degsir
