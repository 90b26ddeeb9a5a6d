// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "degsir/coefficients.hpp"
#include "degsir/errors.hpp"
#include "degsir/fvm.hpp"
#include "degsir/model.hpp"
#include "degsir/policy.hpp"
#include "degsir/reaction.hpp"
#include "degsir/tridiagonal.hpp"

namespace degsir {

/// Shape of the initial profile at distance d from the outer boundary.
inline double initial_shape(InitialProfile profile, double d, double length) {
    if (profile == InitialProfile::Uniform) return 1.0;
    return std::sin(0.5 * std::numbers::pi * d / length);
}

/// Integral of the initial shape over one region.
inline double initial_shape_integral(InitialProfile profile, double length) {
    return profile == InitialProfile::Uniform ? length : 2.0 * length / std::numbers::pi;
}

inline RegionState initial_state(const SimulationConfig& cfg, Region r) {
    const auto& g = cfg.grid;
    const auto& ic = cfg.initial_for(r);
    RegionState st(g.n_cells_per_region, 0.0);
    for (std::size_t k = 0; k < g.n_cells_per_region; ++k) {
        const double w =
            initial_shape(cfg.initial_profile, g.distance_from_outer(r, g.cell_center(r, k)), g.region_length());
        st.s[k] = ic.s0 * w;
        st.i[k] = ic.i0 * w;
        st.r[k] = ic.r0 * w;
    }
    return st;
}

/// Initial head count of region r: scale * integral of (S + I + R)(0).
inline double initial_population(const SimulationConfig& cfg, Region r) {
    const auto& ic = cfg.initial_for(r);
    return cfg.population_scale * (ic.s0 + ic.i0 + ic.r0) *
           initial_shape_integral(cfg.initial_profile, cfg.grid.region_length());
}

/// N_i in the birth term. InitialCount freezes the initial head count;
/// Dynamic uses the current mean density of the region.
inline double birth_population(const SimulationConfig& cfg, Region r, const RegionState& st) {
    if (cfg.birth_population == BirthPopulation::InitialCount) return initial_population(cfg, r);
    double sum = 0.0;
    for (std::size_t k = 0; k < st.size(); ++k) sum += st.s[k] + st.i[k] + st.r[k];
    return sum * cfg.grid.dx() / cfg.grid.region_length();
}

inline double max_density(const RegionState& a, const RegionState& b) {
    double m = 0.0;
    for (const auto* st : {&a, &b}) {
        for (auto c : kCompartments) {
            for (double v : st->field(c)) m = std::max(m, std::abs(v));
        }
    }
    return m;
}

struct ClampStats {
    std::size_t count{0};
    /// Largest magnitude zeroed, relative to the state's max density.
    double max_relative{0.0};
};

/// Everything a single region solve needs beyond the two states.
struct RegionStepInputs {
    /// K_i at t + dt.
    const TridiagonalMatrix* stiffness_own{nullptr};
    /// K_j at t + dt; only read when cross diffusion is paired.
    const TridiagonalMatrix* stiffness_other{nullptr};
    InterfaceCoupling coupling{};
    double n_total{0.0};
    /// Negative values with magnitude <= clamp_limit are zeroed.
    double clamp_limit{0.0};
    double density_scale{1.0};
};

/// Advances region `region` by one implicit-Euler step:
///   (I + dt K_i + dt out_i e_G e_G^T / dx) u_new
///     = u_old + dt [f(own, other) + exchange + inflow_G / dx + cross]
/// with everything in the bracket taken from the given states.
inline RegionState step_region(Region region, const RegionState& own_old, const RegionState& other,
                               const SimulationConfig& cfg, double t, const RegionStepInputs& in,
                               ClampStats& stats) {
    const auto& g = cfg.grid;
    const std::size_t n = g.n_cells_per_region;
    const double dt = cfg.dt;
    const double dx = g.dx();
    const auto& p = cfg.params;
    const Region other_region = degsir::other(region);
    const auto lam_own = lambda_field(cfg, region);
    const auto lam_other = lambda_field(cfg, other_region);
    const std::size_t gamma_own = g.interface_cell(region);
    const std::size_t gamma_other = g.interface_cell(other_region);
    const bool cross = cfg.diffusion && cfg.cross_diffusion == CrossDiffusion::Paired &&
                       in.stiffness_other != nullptr;

    TridiagonalMatrix system = cfg.diffusion && in.stiffness_own != nullptr
                                   ? in.stiffness_own->shifted(dt)
                                   : TridiagonalMatrix::identity(n);
    system.diag[gamma_own] += dt * in.coupling.out(region) / dx;

    std::array<std::vector<double>, 3> rhs;
    for (auto c : kCompartments) rhs[index_of(c)] = own_old.field(c);

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t kp = pair_cells(g, k);
        const Triple local = cell_values(own_old, k);
        const Triple foreign = cell_values(other, kp);
        Triple rate{};
        if (cfg.reactions) rate = rate + reaction_eval({local, foreign, in.n_total}, p, region);
        if (cfg.exchange) {
            const double l_own = lambda_eval(lam_own, g.cell_center(region, k));
            const double l_other = lambda_eval(lam_other, g.cell_center(other_region, kp));
            const auto gains = region == Region::One ? exchange_eval(local, foreign, l_own, l_other).into_1
                                                     : exchange_eval(foreign, local, l_other, l_own).into_2;
            rate = rate + gains;
        }
        if (cfg.source) {
            const auto f = cfg.source(region, g.cell_center(region, k), t);
            rate = rate + Triple{f[0], f[1], f[2]};
        }
        for (auto c : kCompartments) rhs[index_of(c)][k] += dt * rate[c];
    }

    for (auto c : kCompartments) {
        rhs[index_of(c)][gamma_own] += dt * in.coupling.out(other_region) * other.field(c)[gamma_other] / dx;
        if (cross) {
            const auto div = in.stiffness_other->apply(other.field(c));
            for (std::size_t k = 0; k < n; ++k) rhs[index_of(c)][k] -= dt * div[pair_cells(g, k)];
        }
    }

    RegionState next(n, t + dt);
    for (auto c : kCompartments) {
        auto sol = thomas_solve(system, rhs[index_of(c)]);
        for (std::size_t k = 0; k < n; ++k) {
            if (sol[k] < 0.0) {
                if (-sol[k] > in.clamp_limit) {
                    throw Error(ErrorCode::PositivityViolation,
                                std::string("region ") + std::to_string(static_cast<int>(region)) +
                                    " compartment " + to_string(c) + " cell " + std::to_string(k) +
                                    " value " + std::to_string(sol[k]));
                }
                ++stats.count;
                if (in.density_scale > 0.0) {
                    stats.max_relative = std::max(stats.max_relative, -sol[k] / in.density_scale);
                }
                sol[k] = 0.0;
            }
        }
        next.field(c) = std::move(sol);
    }
    return next;
}

struct StepOutcome {
    RegionState state_1;
    RegionState state_2;
    InterfaceFluxState flux_1;
    InterfaceFluxState flux_2;
    InterfaceCoupling coupling;
    /// Net interface flux into region 1 per compartment, at the old level.
    Triple flux_into_1{};
};

/// Per-region values fed to the lockdown rule (see LockdownSignal).
inline std::array<double, 2> lockdown_signals(const SimulationConfig& cfg, const RegionState& s1,
                                              const RegionState& s2) {
    const auto& g = cfg.grid;
    auto share = [](double part, double whole) { return whole > 0.0 ? part / whole : 0.0; };
    std::array<double, 2> out{};
    std::size_t idx = 0;
    for (const auto* st : {&s1, &s2}) {
        const Region r = idx == 0 ? Region::One : Region::Two;
        const std::size_t kg = g.interface_cell(r);
        switch (cfg.lockdown_signal) {
        case LockdownSignal::Interface: out[idx] = st->i[kg]; break;
        case LockdownSignal::InterfacePrevalence:
            out[idx] = share(st->i[kg], st->s[kg] + st->i[kg] + st->r[kg]);
            break;
        case LockdownSignal::RegionalTotal:
        case LockdownSignal::RegionalPrevalence: {
            double inf = 0.0;
            double all = 0.0;
            for (std::size_t k = 0; k < st->size(); ++k) {
                inf += st->i[k];
                all += st->s[k] + st->i[k] + st->r[k];
            }
            out[idx] = cfg.lockdown_signal == LockdownSignal::RegionalTotal ? inf * g.dx() : share(inf, all);
            break;
        }
        }
        ++idx;
    }
    return out;
}

/// One coupled time step: decide the interface mode, then Gauss-Seidel over
/// the regions (region 1 against region 2 at t, region 2 against the new
/// region 1), repeated coupling_sweeps times.
class CoupledStepper {
public:
    explicit CoupledStepper(SimulationConfig cfg)
        : cfg_(validate_config(cfg)),
          policy_(mobility_policy(cfg_)),
          fields_{diffusion_field(cfg_, Region::One), diffusion_field(cfg_, Region::Two)} {}

    [[nodiscard]] const SimulationConfig& config() const { return cfg_; }
    [[nodiscard]] const MobilityPolicy& policy() const { return policy_; }
    [[nodiscard]] const LockdownLedger& ledger() const { return ledger_; }
    [[nodiscard]] const ClampStats& clamps() const { return clamps_; }

    /// Mode the next step would use, without touching the ledger.
    [[nodiscard]] InterfaceMode peek_mode(const RegionState& s1, const RegionState& s2) const {
        auto copy = ledger_;
        const auto sig = lockdown_signals(cfg_, s1, s2);
        return lockdown_update(policy_, sig[0], sig[1], cfg_.dt, copy);
    }

    StepOutcome step(const RegionState& s1, const RegionState& s2, double t) {
        const auto& g = cfg_.grid;
        const auto sig = lockdown_signals(cfg_, s1, s2);
        const InterfaceMode mode = lockdown_update(policy_, sig[0], sig[1], cfg_.dt, ledger_);

        StepOutcome out;
        out.flux_1 = interface_closure(g, s1, s2, Region::One, policy_, mode);
        out.flux_2 = interface_closure(g, s2, s1, Region::Two, policy_, mode);
        out.coupling = combine_interface(out.flux_1, out.flux_2);
        const std::size_t g1 = g.interface_cell(Region::One);
        const std::size_t g2 = g.interface_cell(Region::Two);
        for (auto c : kCompartments) {
            out.flux_into_1[c] = out.coupling.flux_into_1(s1.field(c)[g1], s2.field(c)[g2]);
        }

        const double t_next = t + cfg_.dt;
        std::array<TridiagonalMatrix, 2> k;
        if (cfg_.diffusion) {
            k[0] = assemble_diffusion(g, fields_[0], t_next, Region::One, cfg_.outer_sigma);
            k[1] = assemble_diffusion(g, fields_[1], t_next, Region::Two, cfg_.outer_sigma);
        }
        const double scale = max_density(s1, s2);

        RegionStepInputs in1;
        in1.stiffness_own = cfg_.diffusion ? &k[0] : nullptr;
        in1.stiffness_other = cfg_.diffusion ? &k[1] : nullptr;
        in1.coupling = out.coupling;
        in1.n_total = birth_population(cfg_, Region::One, s1);
        in1.clamp_limit = cfg_.clamp_tol * scale;
        in1.density_scale = scale;

        RegionStepInputs in2 = in1;
        in2.stiffness_own = in1.stiffness_other;
        in2.stiffness_other = in1.stiffness_own;
        in2.n_total = birth_population(cfg_, Region::Two, s2);

        const RegionState* other_for_1 = &s2;
        for (std::size_t sweep = 0; sweep < cfg_.coupling_sweeps; ++sweep) {
            out.state_1 = step_region(Region::One, s1, *other_for_1, cfg_, t, in1, clamps_);
            out.state_2 = step_region(Region::Two, s2, out.state_1, cfg_, t, in2, clamps_);
            other_for_1 = &out.state_2;
        }
        return out;
    }

private:
    SimulationConfig cfg_;
    MobilityPolicy policy_;
    std::array<DiffusionField, 2> fields_;
    LockdownLedger ledger_{};
    ClampStats clamps_{};
};

/// Single coupled step with a caller-owned ledger.
inline StepOutcome step_coupled(const RegionState& s1, const RegionState& s2,
                                const SimulationConfig& cfg, double t) {
    CoupledStepper stepper(cfg);
    return stepper.step(s1, s2, t);
}

struct Frame {
    double time{0.0};
    std::array<RegionState, 2> states;
    InterfaceMode mode{InterfaceMode::RobinOpen};
    Triple flux_into_1{};

    [[nodiscard]] const RegionState& state(Region r) const { return states[index_of(r)]; }
};

struct SimulationRecord {
    TwoRegionGrid grid{};
    double population_scale{1.0};
    double dt{0.0};
    double t_final{0.0};
    std::size_t n_steps{0};
    std::vector<Frame> frames;
    double lockdown_days{0.0};
    ClampStats clamps{};
};

/// Integrates from t = 0 to t_final, recording the initial state, every
/// output_stride-th step and the final step.
inline SimulationRecord run_simulation(const SimulationConfig& cfg_in) {
    const SimulationConfig cfg = validate_config(cfg_in);
    CoupledStepper stepper(cfg);

    SimulationRecord rec;
    rec.grid = cfg.grid;
    rec.population_scale = cfg.population_scale;
    rec.dt = cfg.dt;
    rec.t_final = cfg.t_final;
    rec.n_steps = cfg.n_steps();

    RegionState s1 = initial_state(cfg, Region::One);
    RegionState s2 = initial_state(cfg, Region::Two);
    rec.frames.push_back(Frame{0.0, {s1, s2}, stepper.peek_mode(s1, s2), {}});

    for (std::size_t step = 0; step < rec.n_steps; ++step) {
        const double t = static_cast<double>(step) * cfg.dt;
        StepOutcome out;
        try {
            out = stepper.step(s1, s2, t);
        } catch (const Error& e) {
            throw Error(e.code(), e.detail() + " (step starting at t=" + std::to_string(t) + ")");
        }
        const double t_next = static_cast<double>(step + 1) * cfg.dt;
        s1 = std::move(out.state_1);
        s2 = std::move(out.state_2);
        s1.time = t_next;
        s2.time = t_next;
        if ((step + 1) % cfg.output_stride == 0 || step + 1 == rec.n_steps) {
            const auto mode = out.flux_1.mode;
            rec.frames.push_back(Frame{t_next, {s1, s2}, mode, out.flux_into_1});
        }
    }
    rec.lockdown_days = stepper.ledger().lockdown_days;
    rec.clamps = stepper.clamps();
    return rec;
}

}  // namespace degsir
