// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "degsir/errors.hpp"
#include "degsir/model.hpp"

namespace degsir {

/// (S, I, R) values at one point.
struct Triple {
    double s{0.0};
    double i{0.0};
    double r{0.0};

    [[nodiscard]] double operator[](Compartment c) const {
        switch (c) {
        case Compartment::S: return s;
        case Compartment::I: return i;
        case Compartment::R: return r;
        }
        return 0.0;
    }
    [[nodiscard]] double& operator[](Compartment c) {
        switch (c) {
        case Compartment::S: return s;
        case Compartment::I: return i;
        case Compartment::R: return r;
        }
        return s;
    }
    [[nodiscard]] double sum() const { return s + i + r; }

    friend Triple operator+(Triple a, const Triple& b) { return {a.s + b.s, a.i + b.i, a.r + b.r}; }
    friend Triple operator-(Triple a, const Triple& b) { return {a.s - b.s, a.i - b.i, a.r - b.r}; }
    friend Triple operator*(double k, const Triple& a) { return {k * a.s, k * a.i, k * a.r}; }
    friend bool operator==(const Triple&, const Triple&) = default;
};

inline Triple cell_values(const RegionState& st, std::size_t k) { return {st.s[k], st.i[k], st.r[k]}; }

struct ReactionInput {
    Triple local;
    Triple foreign;
    /// N_i entering the birth term Lambda_i * N_i.
    double n_total_local{0.0};
};

/// Local SIR kinetics of region `region`:
///   dS = Lambda_i N_i - mu_S S - (beta_i I + beta_ij I^j) S
///   dI = (beta_i I + beta_ij I^j) S - (gamma_i + mu_I) I
///   dR = gamma_i I - mu_R R
inline Triple reaction_eval(const ReactionInput& in, const EpidemicParams& p, Region region) {
    const double force = p.beta(region) * in.local.i + p.cross_beta(region) * in.foreign.i;
    const double infections = force * in.local.s;
    return {
        p.birth_rate(region) * in.n_total_local - p.mu_s * in.local.s - infections,
        infections - (p.gamma(region) + p.mu_i) * in.local.i,
        p.gamma(region) * in.local.i - p.mu_r * in.local.r,
    };
}

struct ExchangeGains {
    Triple into_1;
    Triple into_2;
};

/// Migration exchange: region i receives lambda_j u^j and loses lambda_i u^i.
inline ExchangeGains exchange_eval(const Triple& u1, const Triple& u2, double lam1, double lam2) {
    const Triple to_1 = lam2 * u2;
    const Triple to_2 = lam1 * u1;
    return {to_1 - to_2, to_2 - to_1};
}

/// Cell of the other region at the same offset from its own left end.
inline std::size_t pair_cells(const TwoRegionGrid& grid, std::size_t k) {
    if (k >= grid.n_cells_per_region) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "cell " + std::to_string(k) + " outside region of " +
                        std::to_string(grid.n_cells_per_region) + " cells");
    }
    return k;
}

}  // namespace degsir
