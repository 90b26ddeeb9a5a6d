// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "degsir/errors.hpp"
#include "degsir/model.hpp"

namespace degsir {

/// Degenerate diffusion coefficient
///   sigma(y, t) = lambda * (y_right - y) * (y - y_left) * exp(-a (t - t_a)),
/// or a constant for nondegenerate test problems.
struct DiffusionField {
    SigmaProfile profile{SigmaProfile::Parabolic};
    double lambda_scale{0.01};
    double a{0.01};
    double t_a{50.0};
    double y_left{0.0};
    double y_right{2.0};
    double constant_value{0.01};
};

/// Temporal factor exp(-a (t - t_a)).
inline double sigma_time_factor(const DiffusionField& f, double t) {
    return std::exp(-f.a * (t - f.t_a));
}

inline double sigma_eval(const DiffusionField& f, double y, double t) {
    if (!(y >= f.y_left && y <= f.y_right)) {
        throw Error(ErrorCode::OutOfDomain,
                    "sigma evaluated at y=" + std::to_string(y) + " outside [" +
                        std::to_string(f.y_left) + ", " + std::to_string(f.y_right) + "]");
    }
    if (f.profile == SigmaProfile::Constant) return f.constant_value;
    return f.lambda_scale * (f.y_right - y) * (y - f.y_left) * sigma_time_factor(f, t);
}

/// d sigma / dy, used by the Galerkin oracle's strong-form cross term.
inline double sigma_dy(const DiffusionField& f, double y, double t) {
    if (f.profile == SigmaProfile::Constant) return 0.0;
    return f.lambda_scale * (f.y_right + f.y_left - 2.0 * y) * sigma_time_factor(f, t);
}

/// Diffusion field of region r under a configuration (sigma_r uses lambda_r).
inline DiffusionField diffusion_field(const SimulationConfig& cfg, Region r) {
    DiffusionField f;
    f.profile = cfg.sigma_profile;
    f.lambda_scale = cfg.params.lambda(r);
    f.a = cfg.params.sigma_a;
    f.t_a = cfg.params.sigma_t_a;
    f.y_left = cfg.grid.x_left;
    f.y_right = cfg.grid.x_right;
    f.constant_value = cfg.sigma_constant;
    return f;
}

/// Piecewise-constant migration probability: zero at the listed points,
/// interior_value elsewhere.
struct LambdaField {
    double interior_value{0.01};
    std::vector<double> zero_points;
};

inline double lambda_eval(const LambdaField& f, double x) {
    for (double z : f.zero_points) {
        if (x == z) return 0.0;
    }
    return f.interior_value;
}

inline LambdaField lambda_field(const SimulationConfig& cfg, Region r) {
    return LambdaField{cfg.params.lambda(r),
                       {r == Region::One ? cfg.grid.x_left : cfg.grid.x_right}};
}

struct WeakDegeneracyReport {
    double value{0.0};
    double refined_value{0.0};
    bool finite{false};
};

/// Midpoint-rule approximation of the double integral of 1/sigma over
/// (t - delta, t + delta) x ([region_lo, region_hi] ∩ [x - delta, x + delta]).
/// `finite` is set when both the value and its one-step refinement are finite
/// and their ratio stays below 2.
inline WeakDegeneracyReport weak_degeneracy_check(const DiffusionField& f, double t, double x,
                                                  double delta, int quad_points, double region_lo,
                                                  double region_hi) {
    const double lo = std::max(region_lo, x - delta);
    const double hi = std::min(region_hi, x + delta);
    if (!(delta > 0.0) || !(hi > lo) || quad_points < 1) {
        throw Error(ErrorCode::OutOfDomain, "empty integration window for weak degeneracy check");
    }

    auto integrate = [&](int n, bool& all_zero) {
        const double hy = (hi - lo) / n;
        const double ht = 2.0 * delta / n;
        double sum = 0.0;
        all_zero = true;
        for (int a = 0; a < n; ++a) {
            const double s = t - delta + (a + 0.5) * ht;
            for (int b = 0; b < n; ++b) {
                const double y = lo + (b + 0.5) * hy;
                const double sig = sigma_eval(f, y, s);
                if (sig > 0.0) {
                    all_zero = false;
                    sum += 1.0 / sig;
                } else {
                    sum += std::numeric_limits<double>::infinity();
                }
            }
        }
        return sum * hy * ht;
    };

    bool all_zero_coarse = false;
    bool all_zero_fine = false;
    WeakDegeneracyReport rep;
    rep.value = integrate(quad_points, all_zero_coarse);
    rep.refined_value = integrate(2 * quad_points, all_zero_fine);
    if (all_zero_coarse && all_zero_fine) {
        throw Error(ErrorCode::DegenerateAtEveryPoint,
                    "sigma vanishes throughout the integration window");
    }
    rep.finite = std::isfinite(rep.value) && std::isfinite(rep.refined_value) &&
                 rep.refined_value / rep.value < 2.0;
    return rep;
}

}  // namespace degsir
