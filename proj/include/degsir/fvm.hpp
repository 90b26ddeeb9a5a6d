// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "degsir/coefficients.hpp"
#include "degsir/model.hpp"
#include "degsir/policy.hpp"
#include "degsir/reaction.hpp"
#include "degsir/tridiagonal.hpp"

namespace degsir {

/// Two-point flux sigma * (u_right - u_left) / dx across one face.
inline double face_flux(double sigma_face, double u_left, double u_right, double dx) {
    if (sigma_face == 0.0) return 0.0;
    return sigma_face * (u_right - u_left) / dx;
}

/// sigma at the n + 1 faces of region r, at time t.
inline std::vector<double> face_sigmas(const TwoRegionGrid& grid, const DiffusionField& field,
                                       double t, Region r) {
    const std::size_t n = grid.n_cells_per_region;
    std::vector<double> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        // Pin the end faces to the exact domain coordinates so the degenerate
        // zeros are hit without roundoff.
        double y = grid.face(r, k);
        if (r == Region::One && k == 0) y = grid.x_left;
        if (k == n && r == Region::One) y = grid.x_interface;
        if (r == Region::Two && k == 0) y = grid.x_interface;
        if (r == Region::Two && k == n) y = grid.x_right;
        out[k] = sigma_eval(field, y, t);
    }
    return out;
}

enum class Side { Left, Right };

/// Homogeneous Dirichlet closure with the boundary on the outer face: the ghost
/// value 0 sits at distance dx/2, which doubles the face transmissibility.
inline TridiagonalMatrix boundary_closure_outer(TridiagonalMatrix m, Side side, double sigma_face,
                                                double dx) {
    const std::size_t row = side == Side::Left ? 0 : m.size() - 1;
    m.diag[row] += 2.0 * sigma_face / (dx * dx);
    return m;
}

/// Stiffness matrix of -d/dx(sigma d/dx) on region r with face-evaluated sigma.
/// The outer face gets the Dirichlet closure; the interface face is left
/// flux-free here because the interface transfer is applied separately.
inline TridiagonalMatrix assemble_diffusion(const TwoRegionGrid& grid, const DiffusionField& field,
                                            double t, Region r, OuterSigma outer = OuterSigma::Face) {
    const std::size_t n = grid.n_cells_per_region;
    const double dx = grid.dx();
    const double inv_dx2 = 1.0 / (dx * dx);
    const auto sig = face_sigmas(grid, field, t, r);

    TridiagonalMatrix m(n);
    for (std::size_t f = 1; f < n; ++f) {
        const double w = sig[f] * inv_dx2;
        // Face f separates cells f-1 and f.
        m.diag[f - 1] += w;
        m.diag[f] += w;
        m.upper[f - 1] -= w;
        m.lower[f - 1] -= w;
    }
    const std::size_t outer_face = r == Region::One ? 0 : n;
    const double outer_sig = outer == OuterSigma::Face
                                 ? sig[outer_face]
                                 : sigma_eval(field, grid.cell_center(r, grid.outer_cell(r)), t);
    return boundary_closure_outer(std::move(m), r == Region::One ? Side::Left : Side::Right, outer_sig, dx);
}

/// Outflow through region r's outer face under the Dirichlet closure, for
/// boundary-cell value u_b: 2 sigma_face u_b / dx. Exactly zero when sigma
/// vanishes on the face.
inline double outer_face_flux(const TwoRegionGrid& grid, const DiffusionField& field, double t, Region r,
                              OuterSigma outer, double u_b) {
    const double y = r == Region::One ? grid.x_left : grid.x_right;
    const double sig =
        outer == OuterSigma::Face ? sigma_eval(field, y, t)
                                  : sigma_eval(field, grid.cell_center(r, grid.outer_cell(r)), t);
    if (sig == 0.0) return 0.0;
    return 2.0 * sig * u_b / grid.dx();
}

/// Region i's own Robin law on the interface, evaluated from the
/// interface-adjacent cells. The signed rate alpha^j(I^i) selects the
/// direction: below the threshold region i draws in alpha * u^j, at or above
/// it region i sends out alpha * u^i.
struct InterfaceFluxState {
    double alpha_value{0.0};
    InterfaceMode mode{InterfaceMode::RobinOpen};
    /// Flux into region i per compartment (density * length / day).
    Triple flux_into{};
    /// Rate multiplying region i's own interface value (outflow).
    double loss_coefficient{0.0};
    /// Rate multiplying region j's interface value (inflow).
    double gain_coefficient{0.0};
};

inline InterfaceFluxState interface_closure(const Triple& own_gamma, const Triple& other_gamma,
                                            Region region_i, const MobilityPolicy& policy,
                                            InterfaceMode mode) {
    InterfaceFluxState st;
    st.mode = mode;
    if (mode == InterfaceMode::NeumannClosed) return st;
    st.alpha_value = signed_alpha(policy, own_gamma.i, other(region_i));
    if (st.alpha_value < 0.0) {
        st.gain_coefficient = -st.alpha_value;
        st.flux_into = st.gain_coefficient * other_gamma;
    } else {
        st.loss_coefficient = st.alpha_value;
        st.flux_into = -st.loss_coefficient * own_gamma;
    }
    return st;
}

inline InterfaceFluxState interface_closure(const TwoRegionGrid& grid, const RegionState& state_i,
                                            const RegionState& state_j, Region region_i,
                                            const MobilityPolicy& policy, InterfaceMode mode) {
    return interface_closure(cell_values(state_i, grid.interface_cell(region_i)),
                             cell_values(state_j, grid.interface_cell(other(region_i))), region_i,
                             policy, mode);
}

/// Conservative transfer across the interface: the average of the two
/// regions' Robin laws, written as outflow rates on each side's interface
/// value. Net flux into region 1 is out_2 * u^2 - out_1 * u^1.
struct InterfaceCoupling {
    double out_1{0.0};
    double out_2{0.0};

    [[nodiscard]] double out(Region r) const { return r == Region::One ? out_1 : out_2; }
    [[nodiscard]] double flux_into_1(double u1, double u2) const { return out_2 * u2 - out_1 * u1; }
};

inline InterfaceCoupling combine_interface(const InterfaceFluxState& cond_1,
                                           const InterfaceFluxState& cond_2) {
    return {0.5 * (cond_1.loss_coefficient + cond_2.gain_coefficient),
            0.5 * (cond_2.loss_coefficient + cond_1.gain_coefficient)};
}

}  // namespace degsir
