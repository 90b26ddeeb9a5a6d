// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "degsir/galerkin.hpp"
#include "degsir/io.hpp"
#include "degsir/metrics.hpp"
#include "degsir/stepper.hpp"
#include "degsir/sweep.hpp"

namespace {

using namespace degsir;

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::SingularMatrix:
    case ErrorCode::PositivityViolation:
    case ErrorCode::QuadratureUnderResolved:
    case ErrorCode::StiffnessStepTooLarge:
    case ErrorCode::NegativeInfected:
    case ErrorCode::DegenerateAtEveryPoint:
        return kNumericalError;
    default:
        return kConfigError;
    }
}

struct Options {
    std::string config;
    std::string out_dir = ".";
    std::size_t threads = 1;
    bool seedless = false;
    std::size_t oracle_modes = 0;
};

SimulationConfig load(const Options& o) {
    return o.config.empty() ? validate_config(SimulationConfig{}) : parse_config(o.config);
}

std::string out_path(const Options& o, const std::string& name) {
    std::filesystem::create_directories(o.out_dir);
    return (std::filesystem::path(o.out_dir) / name).string();
}

int oracle_report(const Options& o, const SimulationConfig& cfg, const SimulationRecord& fvm) {
    const auto gal = run_oracle(cfg, o.oracle_modes);
    const auto d = compare_records(fvm, gal);
    write_file(out_path(o, "oracle_discrepancy.csv"), discrepancy_csv(d));
    std::printf("oracle modes=%zu max_relative_l2=%s final_relative_l2=%s\n", o.oracle_modes,
                format_double(d.max_relative).c_str(), format_double(d.final_relative).c_str());
    return kOk;
}

int cmd_run(const Options& o) {
    const auto cfg = load(o);
    const auto rec = run_simulation(cfg);
    write_file(out_path(o, "timeseries.csv"), timeseries_csv(rec, cfg.probe_cell));
    for (auto c : kCompartments) {
        write_file(out_path(o, std::string("heatmap_") + to_string(c) + ".csv"), heatmap_csv(rec, c));
    }
    const auto row = summarize(rec);
    write_file(out_path(o, "summary.csv"), summary_csv(row));
    std::printf("%s\n%s\n", summary_header().c_str(), summary_fields(row).c_str());
    if (o.oracle_modes > 0) return oracle_report(o, cfg, rec);
    return kOk;
}

int cmd_oracle(const Options& o) {
    const auto cfg = load(o);
    return oracle_report(o, cfg, run_simulation(cfg));
}

int cmd_sweep(const Options& o, const std::vector<double>& lambdas, const std::vector<double>& grid1,
              const std::vector<double>& grid2) {
    const auto cfg = load(o);
    if (grid1.empty() != grid2.empty()) {
        std::cerr << "error: --grid-lambda1 and --grid-lambda2 must be given together\n";
        return kConfigError;
    }
    int status = kOk;
    if (!grid1.empty()) {
        const auto g = run_lambda_grid(cfg, grid1, grid2, o.threads);
        write_file(out_path(o, "lambda_grid.csv"), grid_csv(g));
        for (const auto& p : g.points) {
            if (!p.ok) status = kNumericalError;
        }
    } else {
        const auto pts = run_lambda_sweep(cfg, lambdas.empty() ? table_lambdas() : lambdas, o.threads);
        const auto csv = sweep_csv(pts);
        write_file(out_path(o, "lambda_sweep.csv"), csv);
        std::fputs(csv.c_str(), stdout);
        for (const auto& p : pts) {
            if (!p.ok) status = kNumericalError;
        }
    }
    return status;
}

int cmd_sigma(const Options& o, double lambda, double t_end, std::size_t n_t, std::size_t n_y) {
    auto cfg = load(o);
    cfg.params.lambda_1 = lambda;
    validate_config(cfg);
    write_file(out_path(o, "sigma.csv"), sigma_csv(diffusion_field(cfg, Region::One), t_end, n_t, n_y));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-region degenerate-diffusion SIR simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--config", o.config, "key = value configuration file (all keys required)")
        ->check(CLI::ExistingFile);
    app.add_option("--out-dir", o.out_dir, "directory for output files")->capture_default_str();
    app.add_option("--threads", o.threads, "worker threads for sweeps")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_flag("--seedless", o.seedless, "accepted for scripting; every run is deterministic and uses no RNG");
    app.add_option("--oracle", o.oracle_modes, "also run the Galerkin oracle with this many modes per region");

    auto* run = app.add_subcommand("run", "one simulation: time series, heatmaps, summary");
    auto* oracle = app.add_subcommand("oracle", "finite-volume vs Galerkin discrepancy report");
    auto* sweep = app.add_subcommand("sweep", "lambda sweep or (lambda_1, lambda_2) grid");
    std::vector<double> lambdas;
    std::vector<double> grid1;
    std::vector<double> grid2;
    sweep->add_option("--lambdas", lambdas, "lambda values (default: the eight-point table)")->delimiter(',');
    sweep->add_option("--grid-lambda1", grid1, "lambda_1 axis of a grid sweep")->delimiter(',');
    sweep->add_option("--grid-lambda2", grid2, "lambda_2 axis of a grid sweep")->delimiter(',');
    auto* sigma = app.add_subcommand("sigma-dump", "sigma(y, t) of region 1 on a lattice");
    double sigma_lambda = 0.01;
    double sigma_t_end = 300.0;
    std::size_t n_t = 301;
    std::size_t n_y = 201;
    sigma->add_option("--lambda", sigma_lambda, "lambda scale of sigma")->capture_default_str();
    sigma->add_option("--t-end", sigma_t_end, "last time sampled")->capture_default_str();
    sigma->add_option("--nt", n_t, "time samples")->capture_default_str();
    sigma->add_option("--ny", n_y, "space samples")->capture_default_str();
    auto* defaults = app.add_subcommand("default-config", "print the default configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return kConfigError;
    }

    try {
        if (*run) return cmd_run(o);
        if (*oracle) {
            if (o.oracle_modes == 0) o.oracle_modes = 32;
            return cmd_oracle(o);
        }
        if (*sweep) return cmd_sweep(o, lambdas, grid1, grid2);
        if (*sigma) return cmd_sigma(o, sigma_lambda, sigma_t_end, n_t, n_y);
        if (*defaults) {
            std::fputs(format_config(SimulationConfig{}).c_str(), stdout);
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
    std::cerr << app.help();
    return kConfigError;
}
