// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "degsir/errors.hpp"

namespace degsir {

/// Square tridiagonal matrix. Row k reads
///   lower[k-1] * x[k-1] + diag[k] * x[k] + upper[k] * x[k+1].
struct TridiagonalMatrix {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    TridiagonalMatrix() = default;
    explicit TridiagonalMatrix(std::size_t n)
        : lower(n > 0 ? n - 1 : 0, 0.0), diag(n, 0.0), upper(n > 0 ? n - 1 : 0, 0.0) {}

    [[nodiscard]] std::size_t size() const { return diag.size(); }

    [[nodiscard]] static TridiagonalMatrix identity(std::size_t n) {
        TridiagonalMatrix m(n);
        for (auto& d : m.diag) d = 1.0;
        return m;
    }

    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const {
        const std::size_t n = size();
        std::vector<double> y(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            double v = diag[k] * x[k];
            if (k > 0) v += lower[k - 1] * x[k - 1];
            if (k + 1 < n) v += upper[k] * x[k + 1];
            y[k] = v;
        }
        return y;
    }

    /// I + dt * this.
    [[nodiscard]] TridiagonalMatrix shifted(double dt) const {
        TridiagonalMatrix m(size());
        for (std::size_t k = 0; k < size(); ++k) m.diag[k] = 1.0 + dt * diag[k];
        for (std::size_t k = 0; k < lower.size(); ++k) {
            m.lower[k] = dt * lower[k];
            m.upper[k] = dt * upper[k];
        }
        return m;
    }

    [[nodiscard]] double row_sum(std::size_t k) const {
        double v = diag[k];
        if (k > 0) v += lower[k - 1];
        if (k + 1 < size()) v += upper[k];
        return v;
    }

    [[nodiscard]] bool strictly_diagonally_dominant() const {
        for (std::size_t k = 0; k < size(); ++k) {
            double off = 0.0;
            if (k > 0) off += std::abs(lower[k - 1]);
            if (k + 1 < size()) off += std::abs(upper[k]);
            if (!(std::abs(diag[k]) > off)) return false;
        }
        return true;
    }

    friend bool operator==(const TridiagonalMatrix&, const TridiagonalMatrix&) = default;
};

inline constexpr double kPivotTolerance = 1e-14;

/// Thomas algorithm (forward elimination, back substitution). No pivoting:
/// intended for diagonally dominant systems.
inline std::vector<double> thomas_solve(const TridiagonalMatrix& m, std::span<const double> rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n) {
        throw Error(ErrorCode::IndexOutOfRange, "rhs length does not match matrix size");
    }
    std::vector<double> c(n, 0.0);
    std::vector<double> x(rhs.begin(), rhs.end());
    if (n == 0) return x;

    double pivot = m.diag[0];
    if (std::abs(pivot) < kPivotTolerance) {
        throw Error(ErrorCode::SingularMatrix, "zero pivot in row 0");
    }
    if (n > 1) c[0] = m.upper[0] / pivot;
    x[0] /= pivot;
    for (std::size_t k = 1; k < n; ++k) {
        pivot = m.diag[k] - m.lower[k - 1] * c[k - 1];
        if (std::abs(pivot) < kPivotTolerance) {
            throw Error(ErrorCode::SingularMatrix, "zero pivot in row " + std::to_string(k));
        }
        if (k + 1 < n) c[k] = m.upper[k] / pivot;
        x[k] = (x[k] - m.lower[k - 1] * x[k - 1]) / pivot;
    }
    for (std::size_t k = n - 1; k-- > 0;) x[k] -= c[k] * x[k + 1];
    return x;
}

}  // namespace degsir
