// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Small-N Galerkin discretization of the two-region system, integrated with
// classical RK4. It shares the pointwise laws (reaction, exchange, interface
// rates, lockdown rule) with the finite-volume solver but none of its linear
// algebra, so it serves as an independent cross-check.

#include <Eigen/Dense>

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
#include "degsir/stepper.hpp"

namespace degsir {

/// QuarterWave modes sqrt(2/L) sin((k - 1/2) pi d / L) vanish at the outer
/// end (d = 0) and are free at the interface, so the interface law enters as
/// a boundary load. HalfWave modes sqrt(2/L) sin(k pi d / L) vanish at both
/// ends and cannot see the interface at all.
enum class BasisKind { QuarterWave, HalfWave };

struct GalerkinBasis {
    BasisKind kind{BasisKind::QuarterWave};
    std::size_t n_modes{8};
    double length{1.0};

    /// Wavenumber of mode k (0-based).
    [[nodiscard]] double wavenumber(std::size_t k) const {
        const double m = static_cast<double>(k) + (kind == BasisKind::QuarterWave ? 0.5 : 1.0);
        return m * std::numbers::pi / length;
    }
    [[nodiscard]] double value(std::size_t k, double d) const {
        return std::sqrt(2.0 / length) * std::sin(wavenumber(k) * d);
    }
    /// Derivative with respect to d.
    [[nodiscard]] double slope(std::size_t k, double d) const {
        return std::sqrt(2.0 / length) * wavenumber(k) * std::cos(wavenumber(k) * d);
    }
};

/// Composite Gauss-Legendre rule on [lo, hi].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline Quadrature gauss_legendre(double lo, double hi, std::size_t min_points) {
    // 8-point rule, exact for polynomials of degree 15 on each panel.
    static constexpr std::array<double, 4> kX{0.1834346424956498, 0.5255324099163290,
                                              0.7966664774136267, 0.9602898564975363};
    static constexpr std::array<double, 4> kW{0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};
    const std::size_t panels = std::max<std::size_t>(1, (min_points + 7) / 8);
    const double h = (hi - lo) / static_cast<double>(panels);
    Quadrature q;
    q.nodes.reserve(panels * 8);
    q.weights.reserve(panels * 8);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = lo + (static_cast<double>(p) + 0.5) * h;
        for (int side : {-1, 1}) {
            for (std::size_t j = 0; j < 4; ++j) {
                const std::size_t jj = side < 0 ? 3 - j : j;
                q.nodes.push_back(mid + side * 0.5 * h * kX[jj]);
                q.weights.push_back(0.5 * h * kW[jj]);
            }
        }
    }
    return q;
}

/// Mass and stiffness of one region at a given time.
struct GalerkinSystem {
    Eigen::MatrixXd mass;
    Eigen::MatrixXd stiffness;
};

namespace detail {

inline GalerkinSystem assemble_with(const GalerkinBasis& basis, const DiffusionField& field, double t,
                                    const TwoRegionGrid& grid, Region r, std::size_t quad_points) {
    const double lo = grid.region_start(r);
    const auto q = gauss_legendre(lo, lo + grid.region_length(), quad_points);
    const auto n = static_cast<Eigen::Index>(basis.n_modes);
    const auto nq = static_cast<Eigen::Index>(q.nodes.size());
    Eigen::MatrixXd phi(nq, n);
    Eigen::MatrixXd dphi(nq, n);
    Eigen::VectorXd w(nq);
    Eigen::VectorXd ws(nq);
    for (Eigen::Index a = 0; a < nq; ++a) {
        const double x = q.nodes[static_cast<std::size_t>(a)];
        const double d = grid.distance_from_outer(r, x);
        for (Eigen::Index k = 0; k < n; ++k) {
            phi(a, k) = basis.value(static_cast<std::size_t>(k), d);
            dphi(a, k) = basis.slope(static_cast<std::size_t>(k), d);
        }
        w(a) = q.weights[static_cast<std::size_t>(a)];
        ws(a) = w(a) * sigma_eval(field, x, t);
    }
    GalerkinSystem sys;
    sys.mass = phi.transpose() * w.asDiagonal() * phi;
    sys.stiffness = dphi.transpose() * ws.asDiagonal() * dphi;
    return sys;
}

}  // namespace detail

/// Mass M_kl = int v_k v_l and stiffness K_kl = int sigma v_k' v_l' over
/// region r. Throws QuadratureUnderResolved when doubling the rule moves any
/// entry by more than 1e-8.
inline GalerkinSystem assemble_galerkin(const GalerkinBasis& basis, const DiffusionField& field, double t,
                                        const TwoRegionGrid& grid, Region r, std::size_t quad_points) {
    if (quad_points < 4 * basis.n_modes) {
        throw Error(ErrorCode::QuadratureUnderResolved,
                    "need at least 4 quadrature points per mode, got " + std::to_string(quad_points));
    }
    auto sys = detail::assemble_with(basis, field, t, grid, r, quad_points);
    const auto fine = detail::assemble_with(basis, field, t, grid, r, 2 * quad_points);
    const double dm = (sys.mass - fine.mass).cwiseAbs().maxCoeff();
    const double dk = (sys.stiffness - fine.stiffness).cwiseAbs().maxCoeff();
    if (dm > 1e-8 || dk > 1e-8) {
        throw Error(ErrorCode::QuadratureUnderResolved,
                    "entries move by " + std::to_string(std::max(dm, dk)) + " when the rule is doubled");
    }
    return sys;
}

/// Largest eigenvalue of M^{-1} K by power iteration.
inline double max_rate(const Eigen::MatrixXd& mass, const Eigen::MatrixXd& stiffness,
                       std::size_t iterations = 500) {
    const Eigen::MatrixXd a = mass.ldlt().solve(stiffness);
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(a.rows(), 1.0, 2.0);
    double est = 0.0;
    for (std::size_t it = 0; it < iterations; ++it) {
        const Eigen::VectorXd next = a * v;
        const double norm = next.norm();
        if (norm == 0.0) return 0.0;
        const double prev = est;
        est = v.dot(next) / v.squaredNorm();
        v = next / norm;
        if (it > 10 && std::abs(est - prev) <= 1e-12 * std::abs(est)) break;
    }
    return est;
}

struct OracleOptions {
    std::size_t quad_points{0};  ///< 0 picks 8 per mode
    BasisKind basis{BasisKind::QuarterWave};
    /// RK4 step; empty picks the largest stable step that lands on every
    /// recording time.
    std::optional<double> dt{};
};

/// Coefficients of one region: one vector per compartment.
using ModeCoefficients = std::array<Eigen::VectorXd, 3>;

/// Galerkin model for a configuration: precomputed operators and the
/// right-hand side of the coefficient ODE.
class GalerkinModel {
public:
    GalerkinModel(const SimulationConfig& cfg, std::size_t n_modes, const OracleOptions& opt = {})
        : cfg_(validate_config(cfg)), policy_(mobility_policy(cfg_)) {
        if (n_modes < 1) {
            throw Error(ErrorCode::GridDegenerate, "oracle needs at least one mode");
        }
        if (cfg_.cross_diffusion == CrossDiffusion::Paired) {
            throw Error(ErrorCode::ParseError, "the oracle does not model paired cross diffusion");
        }
        basis_ = GalerkinBasis{opt.basis, n_modes, cfg_.grid.region_length()};
        const std::size_t qp = opt.quad_points == 0 ? 8 * n_modes : opt.quad_points;
        const auto n = static_cast<Eigen::Index>(n_modes);
        for (Region r : {Region::One, Region::Two}) {
            auto& reg = regions_[index_of(r)];
            reg.field = diffusion_field(cfg_, r);
            const auto sys = assemble_galerkin(basis_, reg.field, ref_time(), cfg_.grid, r, qp);
            const auto ldlt = sys.mass.ldlt();
            reg.mass = sys.mass;
            reg.minv_k = ldlt.solve(sys.stiffness);
            reg.stiffness = sys.stiffness;

            const double lo = cfg_.grid.region_start(r);
            const auto q = gauss_legendre(lo, lo + cfg_.grid.region_length(), qp);
            const auto nq = static_cast<Eigen::Index>(q.nodes.size());
            reg.nodes = q.nodes;
            reg.weights = Eigen::Map<const Eigen::VectorXd>(q.weights.data(), nq);
            reg.phi.resize(nq, n);
            for (Eigen::Index a = 0; a < nq; ++a) {
                const double d = cfg_.grid.distance_from_outer(r, q.nodes[static_cast<std::size_t>(a)]);
                for (Eigen::Index k = 0; k < n; ++k) reg.phi(a, k) = basis_.value(static_cast<std::size_t>(k), d);
            }
            reg.project = ldlt.solve(reg.phi.transpose() * reg.weights.asDiagonal());
            Eigen::VectorXd trace(n);
            for (Eigen::Index k = 0; k < n; ++k) {
                trace(k) = basis_.value(static_cast<std::size_t>(k), cfg_.grid.region_length());
            }
            reg.trace = trace;
            reg.minv_trace = ldlt.solve(trace);
            reg.lambda = lambda_field(cfg_, r);
        }
    }

    [[nodiscard]] const SimulationConfig& config() const { return cfg_; }
    [[nodiscard]] const GalerkinBasis& basis() const { return basis_; }
    [[nodiscard]] const Eigen::MatrixXd& mass(Region r) const { return regions_[index_of(r)].mass; }
    [[nodiscard]] const Eigen::MatrixXd& stiffness(Region r) const { return regions_[index_of(r)].stiffness; }

    /// sigma is separable in (y, t); this is the time-dependent factor
    /// relative to the assembly time.
    [[nodiscard]] double stiffness_scale(double t) const {
        if (!cfg_.diffusion) return 0.0;
        if (cfg_.sigma_profile == SigmaProfile::Constant) return 1.0;
        return sigma_time_factor(regions_[0].field, t) / sigma_time_factor(regions_[0].field, ref_time());
    }

    /// Largest stable RK4 step over [0, t_final]: 0.5 / max eigenvalue of M^{-1} K(t).
    [[nodiscard]] double stable_step() const {
        double worst = 0.0;
        // The time factor is monotone, so its extremes sit at the ends.
        for (double t : {0.0, cfg_.t_final}) {
            const double s = stiffness_scale(t);
            for (const auto& reg : regions_) worst = std::max(worst, s * max_rate(reg.mass, reg.stiffness));
        }
        return worst > 0.0 ? 0.5 / worst : std::numeric_limits<double>::infinity();
    }

    [[nodiscard]] ModeCoefficients project(Region r, const std::array<std::vector<double>, 3>& nodal) const {
        const auto& reg = regions_[index_of(r)];
        ModeCoefficients out;
        for (std::size_t c = 0; c < 3; ++c) {
            out[c] = reg.project * Eigen::Map<const Eigen::VectorXd>(nodal[c].data(),
                                                                     static_cast<Eigen::Index>(nodal[c].size()));
        }
        return out;
    }

    /// L2 projection of the initial data.
    [[nodiscard]] std::array<ModeCoefficients, 2> initial_coefficients() const {
        std::array<ModeCoefficients, 2> out;
        for (Region r : {Region::One, Region::Two}) {
            const auto& reg = regions_[index_of(r)];
            const auto& ic = cfg_.initial_for(r);
            std::array<std::vector<double>, 3> nodal;
            for (auto& v : nodal) v.resize(reg.nodes.size());
            for (std::size_t a = 0; a < reg.nodes.size(); ++a) {
                const double w = initial_shape(cfg_.initial_profile,
                                               cfg_.grid.distance_from_outer(r, reg.nodes[a]),
                                               cfg_.grid.region_length());
                nodal[0][a] = ic.s0 * w;
                nodal[1][a] = ic.i0 * w;
                nodal[2][a] = ic.r0 * w;
            }
            out[index_of(r)] = project(r, nodal);
        }
        return out;
    }

    /// Field values at the interface end of region r.
    [[nodiscard]] Triple trace(Region r, const ModeCoefficients& d) const {
        const auto& t = regions_[index_of(r)].trace;
        return {t.dot(d[0]), t.dot(d[1]), t.dot(d[2])};
    }

    /// Field values at arbitrary points of region r.
    [[nodiscard]] std::array<std::vector<double>, 3> reconstruct(Region r, const ModeCoefficients& d,
                                                                 const std::vector<double>& xs) const {
        std::array<std::vector<double>, 3> out;
        for (auto& v : out) v.assign(xs.size(), 0.0);
        for (std::size_t a = 0; a < xs.size(); ++a) {
            const double dist = cfg_.grid.distance_from_outer(r, xs[a]);
            for (std::size_t k = 0; k < basis_.n_modes; ++k) {
                const double v = basis_.value(k, dist);
                for (std::size_t c = 0; c < 3; ++c) out[c][a] += v * d[c](static_cast<Eigen::Index>(k));
            }
        }
        return out;
    }

    /// Interface transfer rates frozen for one RK4 step, plus the lockdown
    /// decision that produced them.
    struct Frozen {
        InterfaceCoupling coupling{};
        InterfaceMode mode{InterfaceMode::RobinOpen};
    };

    /// Decides the interface mode for a step of length dt (accumulated into
    /// the ledger) and freezes the transfer rates at the current traces.
    Frozen freeze_interface(const std::array<ModeCoefficients, 2>& d, double dt, LockdownLedger& ledger) const {
        std::array<Triple, 2> tr{trace(Region::One, d[0]), trace(Region::Two, d[1])};
        for (auto& t : tr) {
            t.s = std::max(t.s, 0.0);
            t.i = std::max(t.i, 0.0);
            t.r = std::max(t.r, 0.0);
        }
        std::array<double, 2> sig{};
        for (std::size_t k = 0; k < 2; ++k) {
            const auto& reg = regions_[k];
            switch (cfg_.lockdown_signal) {
            case LockdownSignal::Interface: sig[k] = tr[k].i; break;
            case LockdownSignal::InterfacePrevalence:
                sig[k] = tr[k].sum() > 0.0 ? tr[k].i / tr[k].sum() : 0.0;
                break;
            case LockdownSignal::RegionalTotal:
            case LockdownSignal::RegionalPrevalence: {
                const Eigen::VectorXd wi = reg.weights.asDiagonal() * (reg.phi * d[k][1]);
                const double inf = wi.sum();
                const double all = (reg.weights.asDiagonal() * (reg.phi * (d[k][0] + d[k][1] + d[k][2]))).sum();
                sig[k] = cfg_.lockdown_signal == LockdownSignal::RegionalTotal ? inf
                                                                               : (all > 0.0 ? inf / all : 0.0);
                break;
            }
            }
        }
        Frozen f;
        f.mode = lockdown_update(policy_, sig[0], sig[1], dt, ledger);
        const auto c1 = interface_closure(tr[0], tr[1], Region::One, policy_, f.mode);
        const auto c2 = interface_closure(tr[1], tr[0], Region::Two, policy_, f.mode);
        f.coupling = combine_interface(c1, c2);
        return f;
    }

    /// Time derivative of all coefficients.
    [[nodiscard]] std::array<ModeCoefficients, 2> rhs(const std::array<ModeCoefficients, 2>& d, double t,
                                                      const Frozen& frozen) const {
        const auto& p = cfg_.params;
        const double ks = stiffness_scale(t);
        std::array<ModeCoefficients, 2> out;
        std::array<Eigen::MatrixXd, 2> nodal;  // nq x 3
        for (std::size_t k = 0; k < 2; ++k) {
            const auto& reg = regions_[k];
            nodal[k].resize(reg.phi.rows(), 3);
            for (Eigen::Index c = 0; c < 3; ++c) nodal[k].col(c) = reg.phi * d[k][static_cast<std::size_t>(c)];
        }
        const std::array<Triple, 2> tr{trace(Region::One, d[0]), trace(Region::Two, d[1])};
        std::array<Triple, 2> flux{};
        for (auto c : kCompartments) {
            const double into_1 = frozen.coupling.flux_into_1(tr[0][c], tr[1][c]);
            flux[0][c] = into_1;
            flux[1][c] = -into_1;
        }

        for (Region r : {Region::One, Region::Two}) {
            const std::size_t k = index_of(r);
            const std::size_t j = 1 - k;
            const auto& reg = regions_[k];
            const auto nq = reg.phi.rows();
            double n_total = initial_population(cfg_, r);
            if (cfg_.birth_population == BirthPopulation::Dynamic) {
                n_total = (reg.weights.asDiagonal() * nodal[k].rowwise().sum()).sum() / cfg_.grid.region_length();
            }
            const auto& lam_other_field = regions_[j].lambda;
            Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nq, 3);
            for (Eigen::Index a = 0; a < nq; ++a) {
                const Triple local{nodal[k](a, 0), nodal[k](a, 1), nodal[k](a, 2)};
                // Nodes are laid out from each region's left end, so index a
                // is the paired point in the other region.
                const Triple foreign{nodal[j](a, 0), nodal[j](a, 1), nodal[j](a, 2)};
                Triple rate{};
                if (cfg_.reactions) rate = rate + reaction_eval({local, foreign, n_total}, p, r);
                if (cfg_.exchange) {
                    const double x = reg.nodes[static_cast<std::size_t>(a)];
                    const double xo = regions_[j].nodes[static_cast<std::size_t>(a)];
                    const double l_own = lambda_eval(reg.lambda, x);
                    const double l_other = lambda_eval(lam_other_field, xo);
                    rate = rate + (r == Region::One ? exchange_eval(local, foreign, l_own, l_other).into_1
                                                    : exchange_eval(foreign, local, l_other, l_own).into_2);
                }
                if (cfg_.source) {
                    const auto f = cfg_.source(r, reg.nodes[static_cast<std::size_t>(a)], t);
                    rate = rate + Triple{f[0], f[1], f[2]};
                }
                g(a, 0) = rate.s;
                g(a, 1) = rate.i;
                g(a, 2) = rate.r;
            }
            for (Eigen::Index c = 0; c < 3; ++c) {
                const auto cc = static_cast<std::size_t>(c);
                Eigen::VectorXd v = reg.project * g.col(c);
                if (ks != 0.0) v -= ks * (reg.minv_k * d[k][cc]);
                v += flux[k][static_cast<Compartment>(c)] * reg.minv_trace;
                out[k][cc] = std::move(v);
            }
        }
        return out;
    }

private:
    struct RegionOps {
        DiffusionField field;
        LambdaField lambda;
        Eigen::MatrixXd mass;
        Eigen::MatrixXd stiffness;
        Eigen::MatrixXd minv_k;
        Eigen::MatrixXd phi;
        Eigen::VectorXd weights;
        Eigen::MatrixXd project;
        Eigen::VectorXd trace;
        Eigen::VectorXd minv_trace;
        std::vector<double> nodes;
    };

    [[nodiscard]] double ref_time() const { return cfg_.params.sigma_t_a; }

    SimulationConfig cfg_;
    MobilityPolicy policy_;
    GalerkinBasis basis_;
    std::array<RegionOps, 2> regions_;
};

namespace detail {

inline std::array<ModeCoefficients, 2> axpy(const std::array<ModeCoefficients, 2>& y, double a,
                                            const std::array<ModeCoefficients, 2>& x) {
    auto out = y;
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t c = 0; c < 3; ++c) out[k][c] += a * x[k][c];
    }
    return out;
}

}  // namespace detail

/// Integrates the Galerkin system with RK4 and reconstructs S, I, R at the
/// finite-volume cell centres at the same times the finite-volume solver
/// records. The interface rates and lockdown decision are frozen over each
/// RK4 step.
inline SimulationRecord run_oracle(const SimulationConfig& cfg, std::size_t n_modes,
                                   const OracleOptions& opt = {}) {
    GalerkinModel model(cfg, n_modes, opt);
    const auto& c = model.config();
    const double bound = model.stable_step();
    if (opt.dt && *opt.dt > bound) {
        throw Error(ErrorCode::StiffnessStepTooLarge,
                    "RK4 step " + std::to_string(*opt.dt) + " exceeds the stability bound " +
                        std::to_string(bound));
    }
    const double h_max = opt.dt ? *opt.dt : bound;

    SimulationRecord rec;
    rec.grid = c.grid;
    rec.population_scale = c.population_scale;
    rec.dt = c.dt;
    rec.t_final = c.t_final;
    rec.n_steps = c.n_steps();

    std::vector<std::vector<double>> centres(2);
    for (Region r : {Region::One, Region::Two}) {
        for (std::size_t k = 0; k < c.grid.n_cells_per_region; ++k) {
            centres[index_of(r)].push_back(c.grid.cell_center(r, k));
        }
    }
    auto snapshot = [&](const std::array<ModeCoefficients, 2>& d, double t, InterfaceMode mode) {
        Frame f;
        f.time = t;
        f.mode = mode;
        for (Region r : {Region::One, Region::Two}) {
            auto vals = model.reconstruct(r, d[index_of(r)], centres[index_of(r)]);
            RegionState st(c.grid.n_cells_per_region, t);
            st.s = std::move(vals[0]);
            st.i = std::move(vals[1]);
            st.r = std::move(vals[2]);
            f.states[index_of(r)] = std::move(st);
        }
        return f;
    };

    auto d = model.initial_coefficients();
    LockdownLedger ledger;
    {
        auto probe = ledger;
        rec.frames.push_back(snapshot(d, 0.0, model.freeze_interface(d, c.dt, probe).mode));
    }

    // Recording times are the finite-volume frame times.
    std::vector<std::size_t> marks;
    for (std::size_t s = c.output_stride; s <= rec.n_steps; s += c.output_stride) marks.push_back(s);
    if (rec.n_steps > 0 && (marks.empty() || marks.back() != rec.n_steps)) marks.push_back(rec.n_steps);

    std::size_t prev = 0;
    for (std::size_t mark : marks) {
        const double t0 = static_cast<double>(prev) * c.dt;
        const double t1 = static_cast<double>(mark) * c.dt;
        const auto m = static_cast<std::size_t>(std::ceil((t1 - t0) / h_max - 1e-12));
        const double h = (t1 - t0) / static_cast<double>(std::max<std::size_t>(m, 1));
        InterfaceMode mode = InterfaceMode::RobinOpen;
        for (std::size_t s = 0; s < std::max<std::size_t>(m, 1); ++s) {
            const double t = t0 + static_cast<double>(s) * h;
            const auto frozen = model.freeze_interface(d, h, ledger);
            mode = frozen.mode;

            const auto k1 = model.rhs(d, t, frozen);
            const auto k2 = model.rhs(detail::axpy(d, 0.5 * h, k1), t + 0.5 * h, frozen);
            const auto k3 = model.rhs(detail::axpy(d, 0.5 * h, k2), t + 0.5 * h, frozen);
            const auto k4 = model.rhs(detail::axpy(d, h, k3), t + h, frozen);
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t cc = 0; cc < 3; ++cc) {
                    d[k][cc] += (h / 6.0) * (k1[k][cc] + 2.0 * k2[k][cc] + 2.0 * k3[k][cc] + k4[k][cc]);
                }
            }
        }
        rec.frames.push_back(snapshot(d, t1, mode));
        prev = mark;
    }
    rec.lockdown_days = ledger.lockdown_days;
    return rec;
}

/// Relative L2 discrepancy between two records over all compartments and
/// both regions, frame by frame.
struct Discrepancy {
    std::vector<double> times;
    std::vector<double> relative_l2;
    double max_relative{0.0};
    double final_relative{0.0};
};

inline Discrepancy compare_records(const SimulationRecord& reference, const SimulationRecord& other) {
    if (reference.frames.size() != other.frames.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "records have different frame counts");
    }
    Discrepancy out;
    for (std::size_t f = 0; f < reference.frames.size(); ++f) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t r = 0; r < 2; ++r) {
            const auto& a = reference.frames[f].states[r];
            const auto& b = other.frames[f].states[r];
            if (a.size() != b.size()) throw Error(ErrorCode::IndexOutOfRange, "records use different grids");
            for (auto c : kCompartments) {
                for (std::size_t k = 0; k < a.size(); ++k) {
                    const double e = a.field(c)[k] - b.field(c)[k];
                    num += e * e;
                    den += a.field(c)[k] * a.field(c)[k];
                }
            }
        }
        const double rel = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
        out.times.push_back(reference.frames[f].time);
        out.relative_l2.push_back(rel);
        out.max_relative = std::max(out.max_relative, rel);
    }
    if (!out.relative_l2.empty()) out.final_relative = out.relative_l2.back();
    return out;
}

}  // namespace degsir
