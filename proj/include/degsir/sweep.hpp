// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "degsir/errors.hpp"
#include "degsir/metrics.hpp"
#include "degsir/model.hpp"
#include "degsir/stepper.hpp"

namespace degsir {

/// Runs task(i) for i in [0, count) on up to `threads` workers. Each index
/// runs exactly once; the caller owns result storage keyed by index.
inline void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
        });
    }
    for (auto& t : pool) t.join();
}

/// One grid point of a sweep. A failed point keeps its error instead of a
/// summary so the rest of the sweep survives.
struct SweepPoint {
    double lambda_1{0.0};
    double lambda_2{0.0};
    bool ok{false};
    SummaryRow summary{};
    std::string error_code;
    std::string error_message;
};

inline SweepPoint run_point(const SimulationConfig& base, double lambda_1, double lambda_2) {
    SweepPoint pt;
    pt.lambda_1 = lambda_1;
    pt.lambda_2 = lambda_2;
    try {
        SimulationConfig cfg = base;
        cfg.params.lambda_1 = lambda_1;
        cfg.params.lambda_2 = lambda_2;
        pt.summary = summarize(run_simulation(cfg));
        pt.ok = true;
    } catch (const Error& e) {
        pt.error_code = std::string(to_string(e.code()));
        pt.error_message = e.detail();
    } catch (const std::exception& e) {
        pt.error_code = "Exception";
        pt.error_message = e.what();
    }
    return pt;
}

/// One run per lambda with lambda_1 = lambda_2 = lambda; rows follow the
/// input order regardless of thread count.
inline std::vector<SweepPoint> run_lambda_sweep(const SimulationConfig& base, const std::vector<double>& lambdas,
                                                std::size_t threads = 1) {
    std::vector<SweepPoint> out(lambdas.size());
    parallel_for(lambdas.size(), threads, [&](std::size_t i) { out[i] = run_point(base, lambdas[i], lambdas[i]); });
    return out;
}

/// Cartesian product of lambda_1 and lambda_2 values, stored row-major as
/// [i1 * lambda2_values.size() + i2].
struct LambdaGrid {
    std::vector<double> lambda1_values;
    std::vector<double> lambda2_values;
    std::vector<SweepPoint> points;

    [[nodiscard]] const SweepPoint& at(std::size_t i1, std::size_t i2) const {
        return points.at(i1 * lambda2_values.size() + i2);
    }
};

inline LambdaGrid run_lambda_grid(const SimulationConfig& base, const std::vector<double>& lambda1_values,
                                  const std::vector<double>& lambda2_values, std::size_t threads = 1) {
    if (lambda1_values.empty() || lambda2_values.empty()) {
        throw Error(ErrorCode::GridDegenerate, "lambda grid needs at least one value on each axis");
    }
    LambdaGrid g{lambda1_values, lambda2_values, {}};
    const std::size_t n2 = lambda2_values.size();
    g.points.resize(lambda1_values.size() * n2);
    parallel_for(g.points.size(), threads, [&](std::size_t idx) {
        g.points[idx] = run_point(base, lambda1_values[idx / n2], lambda2_values[idx % n2]);
    });
    return g;
}

/// Lambda values of the published impact table.
inline std::vector<double> table_lambdas() { return {1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.2, 0.5, 1.0}; }

}  // namespace degsir
