// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "degsir/errors.hpp"

namespace degsir {

enum class Compartment { S, I, R };
inline constexpr std::array<Compartment, 3> kCompartments{Compartment::S, Compartment::I,
                                                         Compartment::R};

constexpr std::size_t index_of(Compartment c) { return static_cast<std::size_t>(c); }

constexpr const char* to_string(Compartment c) {
    switch (c) {
    case Compartment::S: return "S";
    case Compartment::I: return "I";
    case Compartment::R: return "R";
    }
    return "?";
}

/// Region 1 is [x_left, x_interface], region 2 is [x_interface, x_right].
enum class Region { One = 1, Two = 2 };

constexpr Region other(Region r) { return r == Region::One ? Region::Two : Region::One; }
constexpr std::size_t index_of(Region r) { return r == Region::One ? 0 : 1; }

/// Uniform cell-centred mesh over two equal subdomains sharing one face.
struct TwoRegionGrid {
    double x_left{0.0};
    double x_interface{1.0};
    double x_right{2.0};
    std::size_t n_cells_per_region{302};

    [[nodiscard]] double region_length() const { return x_interface - x_left; }
    [[nodiscard]] double dx() const { return region_length() / static_cast<double>(n_cells_per_region); }

    [[nodiscard]] double region_start(Region r) const {
        return r == Region::One ? x_left : x_interface;
    }

    /// Cell k is counted from the region's own left end.
    [[nodiscard]] double cell_center(Region r, std::size_t k) const {
        return region_start(r) + (static_cast<double>(k) + 0.5) * dx();
    }

    /// Face k is the left face of cell k; face n is the region's right end.
    [[nodiscard]] double face(Region r, std::size_t k) const {
        return region_start(r) + static_cast<double>(k) * dx();
    }

    /// Index of the cell adjacent to the shared interface.
    [[nodiscard]] std::size_t interface_cell(Region r) const {
        return r == Region::One ? n_cells_per_region - 1 : 0;
    }

    /// Index of the cell adjacent to the region's outer (Dirichlet) boundary.
    [[nodiscard]] std::size_t outer_cell(Region r) const {
        return r == Region::One ? 0 : n_cells_per_region - 1;
    }

    /// Distance from the region's outer boundary, in [0, L].
    [[nodiscard]] double distance_from_outer(Region r, double x) const {
        return r == Region::One ? x - x_left : x_right - x;
    }
};

/// Rate constants. Per-region quantities are stored in separate fields so that
/// config keys map one-to-one onto members.
struct EpidemicParams {
    double beta_1{0.05};
    double beta_2{0.05};
    double beta_12{0.1};
    double beta_21{0.1};
    double gamma_1{0.2};
    double gamma_2{0.2};
    double lambda_1{0.01};
    double lambda_2{0.01};
    double big_lambda_1{0.005};
    double big_lambda_2{0.005};
    double mu_s{0.05};
    double mu_i{0.13};
    double mu_r{0.05};
    double sigma_a{0.01};
    double sigma_t_a{50.0};
    double i_threshold_1{8.0};
    double i_threshold_2{8.0};

    [[nodiscard]] double beta(Region r) const { return r == Region::One ? beta_1 : beta_2; }
    /// beta_ij for region i = r.
    [[nodiscard]] double cross_beta(Region r) const { return r == Region::One ? beta_12 : beta_21; }
    [[nodiscard]] double gamma(Region r) const { return r == Region::One ? gamma_1 : gamma_2; }
    [[nodiscard]] double lambda(Region r) const { return r == Region::One ? lambda_1 : lambda_2; }
    [[nodiscard]] double birth_rate(Region r) const {
        return r == Region::One ? big_lambda_1 : big_lambda_2;
    }
    [[nodiscard]] double threshold(Region r) const {
        return r == Region::One ? i_threshold_1 : i_threshold_2;
    }
    [[nodiscard]] double death_rate(Compartment c) const {
        switch (c) {
        case Compartment::S: return mu_s;
        case Compartment::I: return mu_i;
        case Compartment::R: return mu_r;
        }
        return 0.0;
    }
};

/// Cell-averaged (S, I, R) densities of one region at one time level.
struct RegionState {
    std::vector<double> s;
    std::vector<double> i;
    std::vector<double> r;
    double time{0.0};

    RegionState() = default;
    explicit RegionState(std::size_t n, double t = 0.0) : s(n, 0.0), i(n, 0.0), r(n, 0.0), time(t) {}

    [[nodiscard]] std::size_t size() const { return s.size(); }

    [[nodiscard]] std::vector<double>& field(Compartment c) {
        switch (c) {
        case Compartment::S: return s;
        case Compartment::I: return i;
        case Compartment::R: return r;
        }
        return s;
    }
    [[nodiscard]] const std::vector<double>& field(Compartment c) const {
        return const_cast<RegionState*>(this)->field(c);
    }

    [[nodiscard]] bool nonnegative() const {
        for (auto c : kCompartments) {
            for (double v : field(c)) {
                if (!(v >= 0.0)) return false;
            }
        }
        return true;
    }

    friend bool operator==(const RegionState&, const RegionState&) = default;
};

struct InitialCondition {
    double s0{0.0};
    double i0{0.0};
    double r0{0.0};
};

enum class AlphaForm { RationalDecay, ExponentialDecay };
enum class CrossDiffusion { Off, Paired };
/// Quantity compared against the lockdown trigger: the infected density next
/// to the interface, the regional infected integral, or the infected share of
/// the population (next to the interface or over the region).
enum class LockdownSignal { Interface, RegionalTotal, InterfacePrevalence, RegionalPrevalence };
/// Which population feeds the birth term Lambda_i * N_i.
enum class BirthPopulation { InitialCount, Dynamic };
enum class SigmaProfile { Parabolic, Constant };
/// Uniform fills the region; QuarterSine is s0 * sin(pi * d / (2L)) with d the
/// distance from the outer boundary (zero there, flat at the interface).
enum class InitialProfile { Uniform, QuarterSine };
/// Switching applies the threshold lockdown rule; Open never locks; Closed is
/// permanently Neumann.
enum class InterfaceControl { Switching, Open, Closed };
/// Where sigma is sampled for the outer Dirichlet closure: on the boundary
/// face itself (exactly degenerate) or half a cell inside it.
enum class OuterSigma { Face, Inset };

struct SimulationConfig {
    TwoRegionGrid grid{};
    EpidemicParams params{};
    double dt{0.0125};
    double t_final{300.0};
    std::array<InitialCondition, 2> initial{InitialCondition{0.8, 0.2, 0.0},
                                            InitialCondition{1.0, 0.0, 0.0}};
    InitialProfile initial_profile{InitialProfile::Uniform};
    /// Individuals per unit density per unit length.
    double population_scale{300.0};
    AlphaForm alpha_form{AlphaForm::RationalDecay};
    std::size_t coupling_sweeps{1};
    std::size_t output_stride{80};
    CrossDiffusion cross_diffusion{CrossDiffusion::Off};
    BirthPopulation birth_population{BirthPopulation::InitialCount};
    SigmaProfile sigma_profile{SigmaProfile::Parabolic};
    OuterSigma outer_sigma{OuterSigma::Inset};
    double sigma_constant{0.01};
    InterfaceControl interface{InterfaceControl::Switching};
    /// Compared against lockdown_signal; a prevalence fraction by default.
    double lockdown_trigger{0.25};
    double alpha_floor{0.0};
    double reopen_delay{0.0};
    LockdownSignal lockdown_signal{LockdownSignal::RegionalPrevalence};
    double clamp_tol{1e-10};
    bool reactions{true};
    bool exchange{true};
    bool diffusion{true};
    std::size_t probe_cell{151};
    /// Optional forcing added to the reaction terms, evaluated at the old
    /// time level (manufactured-solution tests). Not part of the file format.
    std::function<std::array<double, 3>(Region, double x, double t)> source{};

    [[nodiscard]] std::size_t n_steps() const {
        return static_cast<std::size_t>(std::llround(t_final / dt));
    }
    [[nodiscard]] const InitialCondition& initial_for(Region r) const { return initial[index_of(r)]; }
};

namespace detail {

inline bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace detail

/// Returns every violated invariant of the configuration (empty when valid).
inline std::vector<Violation> config_violations(const SimulationConfig& cfg) {
    std::vector<Violation> out;
    auto add = [&](ErrorCode code, std::string field, std::string reason) {
        out.push_back({code, std::move(field), std::move(reason)});
    };

    const auto& g = cfg.grid;
    if (!(std::isfinite(g.x_left) && std::isfinite(g.x_interface) && std::isfinite(g.x_right)) ||
        !(g.x_left < g.x_interface && g.x_interface < g.x_right)) {
        add(ErrorCode::GridDegenerate, "x_interface", "need x_left < x_interface < x_right");
    } else {
        const double l1 = g.x_interface - g.x_left;
        const double l2 = g.x_right - g.x_interface;
        if (std::abs(l1 - l2) > 1e-12 * std::max(l1, l2)) {
            add(ErrorCode::GridDegenerate, "x_right", "subdomains must have equal length");
        }
    }
    if (g.n_cells_per_region < 2) {
        add(ErrorCode::GridDegenerate, "n_cells_per_region", "need at least 2 cells per region");
    }

    if (!(std::isfinite(cfg.dt) && cfg.dt > 0.0)) {
        add(ErrorCode::NonPositiveStep, "dt", "time step must be positive");
    }
    if (!detail::finite_nonneg(cfg.t_final)) {
        add(ErrorCode::NonPositiveStep, "t_final", "final time must be non-negative");
    } else if (std::isfinite(cfg.dt) && cfg.dt > 0.0) {
        const double steps = cfg.t_final / cfg.dt;
        if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
            add(ErrorCode::NonPositiveStep, "t_final", "t_final must be an integer multiple of dt");
        }
    }

    const auto& p = cfg.params;
    const std::array<std::pair<const char*, double>, 13> rates{{
        {"beta_1", p.beta_1},
        {"beta_2", p.beta_2},
        {"beta_12", p.beta_12},
        {"beta_21", p.beta_21},
        {"gamma_1", p.gamma_1},
        {"gamma_2", p.gamma_2},
        {"big_lambda_1", p.big_lambda_1},
        {"big_lambda_2", p.big_lambda_2},
        {"mu_s", p.mu_s},
        {"mu_i", p.mu_i},
        {"mu_r", p.mu_r},
        {"sigma_a", p.sigma_a},
        {"sigma_t_a", p.sigma_t_a},
    }};
    for (const auto& [name, value] : rates) {
        if (!detail::finite_nonneg(value)) add(ErrorCode::NegativeRate, name, "must be >= 0");
    }
    for (const auto& [name, value] : {std::pair{"lambda_1", p.lambda_1}, std::pair{"lambda_2", p.lambda_2}}) {
        if (!(std::isfinite(value) && value >= 0.0 && value <= 1.0)) {
            add(ErrorCode::NegativeRate, name, "probability must lie in [0, 1]");
        }
    }
    for (const auto& [name, value] :
         {std::pair{"i_threshold_1", p.i_threshold_1}, std::pair{"i_threshold_2", p.i_threshold_2}}) {
        if (!(value > 0.0) || std::isnan(value)) {
            add(ErrorCode::ThresholdNonPositive, name, "threshold must be > 0");
        }
    }
    if (!(cfg.lockdown_trigger > 0.0) || std::isnan(cfg.lockdown_trigger)) {
        add(ErrorCode::ThresholdNonPositive, "lockdown_trigger", "trigger must be > 0");
    }

    const std::array<const char*, 2> suffix{"_1", "_2"};
    for (std::size_t k = 0; k < 2; ++k) {
        const auto& ic = cfg.initial[k];
        if (!detail::finite_nonneg(ic.s0)) add(ErrorCode::NegativeRate, std::string("s0") + suffix[k], "must be >= 0");
        if (!detail::finite_nonneg(ic.i0)) add(ErrorCode::NegativeRate, std::string("i0") + suffix[k], "must be >= 0");
        if (!detail::finite_nonneg(ic.r0)) add(ErrorCode::NegativeRate, std::string("r0") + suffix[k], "must be >= 0");
    }

    if (!(std::isfinite(cfg.population_scale) && cfg.population_scale > 0.0)) {
        add(ErrorCode::NegativeRate, "population_scale", "must be > 0");
    }
    if (!detail::finite_nonneg(cfg.sigma_constant)) {
        add(ErrorCode::NegativeRate, "sigma_constant", "must be >= 0");
    }
    if (!detail::finite_nonneg(cfg.alpha_floor)) add(ErrorCode::NegativeRate, "alpha_floor", "must be >= 0");
    if (!detail::finite_nonneg(cfg.reopen_delay)) add(ErrorCode::NegativeRate, "reopen_delay", "must be >= 0");
    if (!detail::finite_nonneg(cfg.clamp_tol)) add(ErrorCode::NegativeRate, "clamp_tol", "must be >= 0");
    if (cfg.coupling_sweeps < 1) add(ErrorCode::NonPositiveStep, "coupling_sweeps", "must be >= 1");
    if (cfg.output_stride < 1) add(ErrorCode::NonPositiveStep, "output_stride", "must be >= 1");
    if (g.n_cells_per_region >= 2 && cfg.probe_cell >= g.n_cells_per_region) {
        add(ErrorCode::IndexOutOfRange, "probe_cell", "probe cell must lie inside a region");
    }
    return out;
}

/// Returns the config unchanged iff every invariant holds; otherwise throws a
/// ConfigError naming every violated field.
inline SimulationConfig validate_config(const SimulationConfig& cfg) {
    auto violations = config_violations(cfg);
    if (!violations.empty()) throw ConfigError(std::move(violations));
    return cfg;
}

}  // namespace degsir
