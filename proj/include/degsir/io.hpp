// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Flat `key = value` configuration files and CSV emitters. Every double is
// written with 17 significant digits so files round-trip exactly.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "degsir/coefficients.hpp"
#include "degsir/errors.hpp"
#include "degsir/galerkin.hpp"
#include "degsir/metrics.hpp"
#include "degsir/model.hpp"
#include "degsir/policy.hpp"
#include "degsir/stepper.hpp"
#include "degsir/sweep.hpp"

namespace degsir {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
        throw Error(ErrorCode::ParseError, "key " + key + ": '" + v + "' is not a number");
    }
    return out;
}

inline std::size_t parse_count(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long out = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || v.front() == '-' || end != v.c_str() + v.size() || errno == ERANGE) {
        throw Error(ErrorCode::ParseError, "key " + key + ": '" + v + "' is not a non-negative integer");
    }
    return static_cast<std::size_t>(out);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw Error(ErrorCode::ParseError, "key " + key + ": expected true or false, got '" + v + "'");
}

template <class E>
E parse_enum(const std::string& key, const std::string& v, const std::vector<std::pair<std::string, E>>& names) {
    for (const auto& [name, value] : names) {
        if (v == name) return value;
    }
    std::string allowed;
    for (const auto& [name, value] : names) allowed += (allowed.empty() ? "" : "|") + name;
    throw Error(ErrorCode::ParseError, "key " + key + ": expected " + allowed + ", got '" + v + "'");
}

template <class E>
std::string enum_name(E value, const std::vector<std::pair<std::string, E>>& names) {
    for (const auto& [name, v] : names) {
        if (v == value) return name;
    }
    return "?";
}

}  // namespace detail

/// One configuration key: its documentation and how to read and write it.
struct ConfigKey {
    std::string name;
    std::string doc;
    std::function<std::string(const SimulationConfig&)> get;
    std::function<void(SimulationConfig&, const std::string&)> set;
};

inline const std::vector<ConfigKey>& config_keys() {
    using detail::enum_name;
    using detail::parse_enum;
    static const std::vector<std::pair<std::string, InitialProfile>> kProfile{
        {"uniform", InitialProfile::Uniform}, {"quarter_sine", InitialProfile::QuarterSine}};
    static const std::vector<std::pair<std::string, AlphaForm>> kAlpha{
        {"rational", AlphaForm::RationalDecay}, {"exponential", AlphaForm::ExponentialDecay}};
    static const std::vector<std::pair<std::string, CrossDiffusion>> kCross{
        {"off", CrossDiffusion::Off}, {"paired", CrossDiffusion::Paired}};
    static const std::vector<std::pair<std::string, BirthPopulation>> kBirth{
        {"initial_count", BirthPopulation::InitialCount}, {"dynamic", BirthPopulation::Dynamic}};
    static const std::vector<std::pair<std::string, SigmaProfile>> kSigma{
        {"parabolic", SigmaProfile::Parabolic}, {"constant", SigmaProfile::Constant}};
    static const std::vector<std::pair<std::string, OuterSigma>> kOuter{{"face", OuterSigma::Face},
                                                                        {"inset", OuterSigma::Inset}};
    static const std::vector<std::pair<std::string, InterfaceControl>> kControl{
        {"switching", InterfaceControl::Switching},
        {"open", InterfaceControl::Open},
        {"closed", InterfaceControl::Closed}};
    static const std::vector<std::pair<std::string, LockdownSignal>> kSignal{
        {"interface", LockdownSignal::Interface},
        {"regional_total", LockdownSignal::RegionalTotal},
        {"interface_prevalence", LockdownSignal::InterfacePrevalence},
        {"regional_prevalence", LockdownSignal::RegionalPrevalence}};

    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        auto real = [&k](std::string name, std::string doc, std::function<double&(SimulationConfig&)> ref) {
            k.push_back({name, std::move(doc),
                         [ref](const SimulationConfig& c) {
                             return format_double(ref(const_cast<SimulationConfig&>(c)));
                         },
                         [ref, name](SimulationConfig& c, const std::string& v) {
                             ref(c) = detail::parse_double(name, v);
                         }});
        };
        auto count = [&k](std::string name, std::string doc, std::function<std::size_t&(SimulationConfig&)> ref) {
            k.push_back({name, std::move(doc),
                         [ref](const SimulationConfig& c) {
                             return std::to_string(ref(const_cast<SimulationConfig&>(c)));
                         },
                         [ref, name](SimulationConfig& c, const std::string& v) {
                             ref(c) = detail::parse_count(name, v);
                         }});
        };
        auto flag = [&k](std::string name, std::string doc, std::function<bool&(SimulationConfig&)> ref) {
            k.push_back({name, std::move(doc),
                         [ref](const SimulationConfig& c) {
                             return std::string(ref(const_cast<SimulationConfig&>(c)) ? "true" : "false");
                         },
                         [ref, name](SimulationConfig& c, const std::string& v) {
                             ref(c) = detail::parse_bool(name, v);
                         }});
        };
        auto choice = [&k](std::string name, std::string doc, auto ref, const auto& names) {
            k.push_back({name, std::move(doc),
                         [ref, &names](const SimulationConfig& c) {
                             return enum_name(ref(const_cast<SimulationConfig&>(c)), names);
                         },
                         [ref, &names, name](SimulationConfig& c, const std::string& v) {
                             ref(c) = parse_enum(name, v, names);
                         }});
        };

        real("x_left", "left end of region 1", [](SimulationConfig& c) -> double& { return c.grid.x_left; });
        real("x_interface", "shared interface", [](SimulationConfig& c) -> double& { return c.grid.x_interface; });
        real("x_right", "right end of region 2", [](SimulationConfig& c) -> double& { return c.grid.x_right; });
        count("n_cells_per_region", "finite-volume cells in each region",
              [](SimulationConfig& c) -> std::size_t& { return c.grid.n_cells_per_region; });
        real("dt", "time step (days)", [](SimulationConfig& c) -> double& { return c.dt; });
        real("t_final", "horizon (days), a multiple of dt", [](SimulationConfig& c) -> double& { return c.t_final; });

        real("beta_1", "infection rate in region 1", [](SimulationConfig& c) -> double& { return c.params.beta_1; });
        real("beta_2", "infection rate in region 2", [](SimulationConfig& c) -> double& { return c.params.beta_2; });
        real("beta_12", "infection of region 1 by region 2's infected",
             [](SimulationConfig& c) -> double& { return c.params.beta_12; });
        real("beta_21", "infection of region 2 by region 1's infected",
             [](SimulationConfig& c) -> double& { return c.params.beta_21; });
        real("gamma_1", "recovery rate in region 1", [](SimulationConfig& c) -> double& { return c.params.gamma_1; });
        real("gamma_2", "recovery rate in region 2", [](SimulationConfig& c) -> double& { return c.params.gamma_2; });
        real("lambda_1", "migration probability of region 1, in [0, 1]",
             [](SimulationConfig& c) -> double& { return c.params.lambda_1; });
        real("lambda_2", "migration probability of region 2, in [0, 1]",
             [](SimulationConfig& c) -> double& { return c.params.lambda_2; });
        real("big_lambda_1", "birth rate of region 1",
             [](SimulationConfig& c) -> double& { return c.params.big_lambda_1; });
        real("big_lambda_2", "birth rate of region 2",
             [](SimulationConfig& c) -> double& { return c.params.big_lambda_2; });
        real("mu_s", "death rate of susceptibles", [](SimulationConfig& c) -> double& { return c.params.mu_s; });
        real("mu_i", "death rate of infected", [](SimulationConfig& c) -> double& { return c.params.mu_i; });
        real("mu_r", "death rate of recovered", [](SimulationConfig& c) -> double& { return c.params.mu_r; });
        real("sigma_a", "decay rate a of the diffusion coefficient",
             [](SimulationConfig& c) -> double& { return c.params.sigma_a; });
        real("sigma_t_a", "reference time t_a of the diffusion coefficient",
             [](SimulationConfig& c) -> double& { return c.params.sigma_t_a; });
        real("i_threshold_1", "infected density above which region 1's interface pushes out (density units)",
             [](SimulationConfig& c) -> double& { return c.params.i_threshold_1; });
        real("i_threshold_2", "infected density above which region 2's interface pushes out (density units)",
             [](SimulationConfig& c) -> double& { return c.params.i_threshold_2; });

        real("s0_1", "initial S density of region 1", [](SimulationConfig& c) -> double& { return c.initial[0].s0; });
        real("i0_1", "initial I density of region 1", [](SimulationConfig& c) -> double& { return c.initial[0].i0; });
        real("r0_1", "initial R density of region 1", [](SimulationConfig& c) -> double& { return c.initial[0].r0; });
        real("s0_2", "initial S density of region 2", [](SimulationConfig& c) -> double& { return c.initial[1].s0; });
        real("i0_2", "initial I density of region 2", [](SimulationConfig& c) -> double& { return c.initial[1].i0; });
        real("r0_2", "initial R density of region 2", [](SimulationConfig& c) -> double& { return c.initial[1].r0; });
        choice("initial_profile", "uniform | quarter_sine",
               [](SimulationConfig& c) -> InitialProfile& { return c.initial_profile; }, kProfile);
        real("population_scale", "individuals per unit density per unit length",
             [](SimulationConfig& c) -> double& { return c.population_scale; });

        choice("alpha_form", "rational 1/(1+I^2) | exponential exp(-I)",
               [](SimulationConfig& c) -> AlphaForm& { return c.alpha_form; }, kAlpha);
        count("coupling_sweeps", "Gauss-Seidel sweeps between regions per step",
              [](SimulationConfig& c) -> std::size_t& { return c.coupling_sweeps; });
        count("output_stride", "steps between recorded frames",
              [](SimulationConfig& c) -> std::size_t& { return c.output_stride; });
        choice("cross_diffusion", "off | paired",
               [](SimulationConfig& c) -> CrossDiffusion& { return c.cross_diffusion; }, kCross);
        choice("birth_population", "initial_count | dynamic",
               [](SimulationConfig& c) -> BirthPopulation& { return c.birth_population; }, kBirth);
        choice("sigma_profile", "parabolic | constant",
               [](SimulationConfig& c) -> SigmaProfile& { return c.sigma_profile; }, kSigma);
        choice("outer_sigma", "face | inset: where sigma is sampled for the outer Dirichlet closure",
               [](SimulationConfig& c) -> OuterSigma& { return c.outer_sigma; }, kOuter);
        real("sigma_constant", "sigma when sigma_profile = constant",
             [](SimulationConfig& c) -> double& { return c.sigma_constant; });
        choice("interface", "switching | open | closed",
               [](SimulationConfig& c) -> InterfaceControl& { return c.interface; }, kControl);
        real("lockdown_trigger", "the interface closes while the lockdown signal is at or above this",
             [](SimulationConfig& c) -> double& { return c.lockdown_trigger; });
        real("alpha_floor", "the interface also closes while alpha(I) <= this (density signals only)",
             [](SimulationConfig& c) -> double& { return c.alpha_floor; });
        real("reopen_delay", "days the condition must stay clear before reopening",
             [](SimulationConfig& c) -> double& { return c.reopen_delay; });
        choice("lockdown_signal", "interface | regional_total | interface_prevalence | regional_prevalence",
               [](SimulationConfig& c) -> LockdownSignal& { return c.lockdown_signal; }, kSignal);
        real("clamp_tol", "negative values down to -clamp_tol * max density are zeroed",
             [](SimulationConfig& c) -> double& { return c.clamp_tol; });
        flag("reactions", "SIR kinetics on", [](SimulationConfig& c) -> bool& { return c.reactions; });
        flag("exchange", "pointwise migration exchange on", [](SimulationConfig& c) -> bool& { return c.exchange; });
        flag("diffusion", "spatial diffusion on", [](SimulationConfig& c) -> bool& { return c.diffusion; });
        count("probe_cell", "cell index reported in the time series",
              [](SimulationConfig& c) -> std::size_t& { return c.probe_cell; });
        return k;
    }();
    return keys;
}

/// Whether every known key must appear in the file.
enum class KeyCoverage { Full, Partial };

/// Parses `key = value` lines; `#` starts a comment. Unknown or repeated keys
/// are errors, and with KeyCoverage::Full so is any absent key. The result
/// is validated.
inline SimulationConfig parse_config_text(std::string_view text, KeyCoverage coverage = KeyCoverage::Full,
                                          SimulationConfig base = {}) {
    std::map<std::string, const ConfigKey*> index;
    for (const auto& k : config_keys()) index[k.name] = &k;

    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = detail::trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = detail::trim(std::string_view(body).substr(0, eq));
        const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": empty key");
        const auto it = index.find(key);
        if (it == index.end()) throw Error(ErrorCode::UnknownKey, key);
        if (!seen.insert(key).second) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": key " + key + " repeated");
        }
        try {
            it->second->set(base, value);
        } catch (const Error& e) {
            throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.detail());
        }
    }
    if (coverage == KeyCoverage::Full) {
        for (const auto& k : config_keys()) {
            if (!seen.count(k.name)) throw Error(ErrorCode::MissingKey, k.name);
        }
    }
    return validate_config(base);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

inline SimulationConfig parse_config(const std::string& path, KeyCoverage coverage = KeyCoverage::Full) {
    return parse_config_text(read_file(path), coverage);
}

/// Every key with its documentation; parses back to the same config.
inline std::string format_config(const SimulationConfig& cfg) {
    std::string out = "# degsir configuration\n";
    for (const auto& k : config_keys()) {
        out += "\n# " + k.doc + "\n" + k.name + " = " + k.get(cfg) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------- CSV ---

inline std::string timeseries_csv(const SimulationRecord& rec, std::size_t probe_cell) {
    std::string out = "t,region,S_total,I_total,R_total,S_at_probe,I_at_probe,R_at_probe,N_total,interface_mode\n";
    const double w = rec.grid.dx() * rec.population_scale;
    for (const auto& f : rec.frames) {
        for (Region r : {Region::One, Region::Two}) {
            const auto& st = f.state(r);
            if (probe_cell >= st.size()) {
                throw Error(ErrorCode::IndexOutOfRange, "probe cell " + std::to_string(probe_cell) + " out of range");
            }
            double s = 0.0;
            double i = 0.0;
            double rr = 0.0;
            for (std::size_t k = 0; k < st.size(); ++k) {
                s += st.s[k];
                i += st.i[k];
                rr += st.r[k];
            }
            out += format_double(f.time) + "," + std::to_string(static_cast<int>(r)) + "," + format_double(w * s) +
                   "," + format_double(w * i) + "," + format_double(w * rr) + "," + format_double(st.s[probe_cell]) +
                   "," + format_double(st.i[probe_cell]) + "," + format_double(st.r[probe_cell]) + "," +
                   format_double(w * (s + i + rr)) + "," + to_string(f.mode) + "\n";
        }
    }
    return out;
}

/// Long-form `t,x,value` over both regions at every frame.
inline std::string heatmap_csv(const SimulationRecord& rec, Compartment c) {
    std::string out = "t,x,value\n";
    for (const auto& f : rec.frames) {
        for (Region r : {Region::One, Region::Two}) {
            const auto& v = f.state(r).field(c);
            for (std::size_t k = 0; k < v.size(); ++k) {
                out += format_double(f.time) + "," + format_double(rec.grid.cell_center(r, k)) + "," +
                       format_double(v[k]) + "\n";
            }
        }
    }
    return out;
}

/// sigma(y, t) on a regular (t, y) lattice, long form `t,y,sigma`.
inline std::string sigma_csv(const DiffusionField& field, double t_end, std::size_t n_t, std::size_t n_y) {
    if (n_t < 2 || n_y < 2) throw Error(ErrorCode::GridDegenerate, "sigma dump needs at least 2 points per axis");
    std::string out = "t,y,sigma\n";
    for (std::size_t a = 0; a < n_t; ++a) {
        const double t = t_end * static_cast<double>(a) / static_cast<double>(n_t - 1);
        for (std::size_t b = 0; b < n_y; ++b) {
            const double y = b + 1 == n_y ? field.y_right
                                          : field.y_left + (field.y_right - field.y_left) * static_cast<double>(b) /
                                                               static_cast<double>(n_y - 1);
            out += format_double(t) + "," + format_double(y) + "," + format_double(sigma_eval(field, y, t)) + "\n";
        }
    }
    return out;
}

inline std::string summary_header() {
    return "total_population,total_recovered,peak_infected,rest_infected_pct,lockdown_days,lockdown_pct,"
           "rest_of_peak_pct";
}

inline std::string summary_fields(const SummaryRow& row) {
    return format_double(row.total_population) + "," + format_double(row.total_recovered) + "," +
           format_double(row.peak_infected) + "," + format_double(row.rest_infected_pct) + "," +
           format_double(row.lockdown_days) + "," + format_double(row.lockdown_pct) + "," +
           format_double(row.rest_of_peak_pct);
}

inline std::string summary_csv(const SummaryRow& row) { return summary_header() + "\n" + summary_fields(row) + "\n"; }

inline std::string sweep_row(const SweepPoint& p) {
    std::string out = format_double(p.lambda_1) + "," + format_double(p.lambda_2) + "," + (p.ok ? "ok" : "error") + ",";
    if (p.ok) {
        out += summary_fields(p.summary) + ",";
    } else {
        out += ",,,,,,," + p.error_code + ": ";
        std::string msg = p.error_message;
        for (char& ch : msg) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        out += msg;
    }
    return out;
}

/// One row per sweep point in the given order.
inline std::string sweep_csv(const std::vector<SweepPoint>& points) {
    std::string out = "lambda_1,lambda_2,status," + summary_header() + ",error\n";
    for (const auto& p : points) out += sweep_row(p) + "\n";
    return out;
}

/// Long-form grid `lambda1,lambda2,peak_infected,lockdown_days`; failed
/// points leave the two values empty.
inline std::string grid_csv(const LambdaGrid& g) {
    std::string out = "lambda1,lambda2,peak_infected,lockdown_days\n";
    for (const auto& p : g.points) {
        out += format_double(p.lambda_1) + "," + format_double(p.lambda_2) + ",";
        out += p.ok ? format_double(p.summary.peak_infected) + "," + format_double(p.summary.lockdown_days) : ",";
        out += "\n";
    }
    return out;
}

inline std::string discrepancy_csv(const Discrepancy& d) {
    std::string out = "t,relative_l2\n";
    for (std::size_t k = 0; k < d.times.size(); ++k) {
        out += format_double(d.times[k]) + "," + format_double(d.relative_l2[k]) + "\n";
    }
    return out;
}

}  // namespace degsir
