// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: parameter sweeps and self-validation for the
// reflector-probability model.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 compute error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reflectprob/experiment.hpp"

namespace {

using reflectprob::experiment::ExperimentSpec;
using reflectprob::experiment::Mode;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCompute = 3;

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        vals.push_back(std::stod(item));
    }
    return vals;
}

reflectprob::geometry::Point2 parse_point(const std::string& text, const char* what) {
    const auto vals = parse_csv_doubles(text);
    if (vals.size() != 2) {
        throw CLI::ValidationError(std::string(what) + ": expected \"x,y\"");
    }
    return reflectprob::geometry::Point2{vals[0], vals[1]};
}

nlohmann::json effective_config(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["rnet"] = spec.cfg.r_net;
    j["tx"] = {spec.cfg.tx.x(), spec.cfg.tx.y()};
    j["rx"] = {spec.cfg.rx.x(), spec.cfg.rx.y()};
    j["lengths"] = spec.lengths;
    j["txx"] = spec.tx_x_values;
    j["samples"] = spec.sample_spec.n_samples;
    j["seed"] = spec.sample_spec.seed;
    j["workers"] = spec.sample_spec.workers;
    j["tol"] = spec.quad.rel_tol;
    j["abs_tol"] = spec.quad.abs_tol;
    j["max_depth"] = spec.quad.max_depth;
    j["configs"] = spec.validate_configs;
    j["out"] = spec.output_path;
    j["json"] = spec.json_output;
    return j;
}

struct CliOptions {
    std::string tx_text;
    std::string rx_text;
    std::string lengths_text;
    std::string txx_text;
    std::string config_path;
    bool show_config = false;
    bool rx_from_file = false;
};

// Fill `spec` from an optional JSON config file; command-line flags override.
void apply_config_file(ExperimentSpec& spec, CliOptions& opt, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config: cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("rnet")) spec.cfg.r_net = j["rnet"].get<double>();
    if (j.contains("tx")) {
        auto v = j["tx"].get<std::vector<double>>();
        if (v.size() == 2) spec.cfg.tx = {v[0], v[1]};
    }
    if (j.contains("rx")) {
        auto v = j["rx"].get<std::vector<double>>();
        if (v.size() == 2) {
            spec.cfg.rx = {v[0], v[1]};
            opt.rx_from_file = true;
        }
    }
    if (j.contains("lengths")) spec.lengths = j["lengths"].get<std::vector<double>>();
    if (j.contains("txx")) spec.tx_x_values = j["txx"].get<std::vector<double>>();
    if (j.contains("samples")) spec.sample_spec.n_samples = j["samples"].get<std::uint64_t>();
    if (j.contains("seed")) spec.sample_spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("workers")) spec.sample_spec.workers = j["workers"].get<unsigned>();
    if (j.contains("tol")) spec.quad.rel_tol = j["tol"].get<double>();
    if (j.contains("configs")) spec.validate_configs = j["configs"].get<int>();
    if (j.contains("out")) spec.output_path = j["out"].get<std::string>();
    if (j.contains("json")) spec.json_output = j["json"].get<bool>();
}

int emit_rows(const ExperimentSpec& spec, const std::vector<reflectprob::experiment::ResultRow>& rows) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!spec.output_path.empty()) {
        file.open(spec.output_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file " << spec.output_path << "\n";
            return kExitCompute;
        }
        out = &file;
    }
    if (spec.json_output) {
        reflectprob::experiment::write_json(rows, *out);
    } else {
        reflectprob::experiment::write_csv(rows, *out);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) try {
    CLI::App app{"Reflection probability of a random segment object: analytic vs Monte Carlo"};
    app.require_subcommand(1);

    ExperimentSpec spec;
    spec.cfg.r_net = 30.0;
    spec.cfg.tx = {0.0, 3.0};
    spec.cfg.rx = {20.0, 20.0};
    spec.lengths = {1.0, 5.0, 10.0, 20.0, 30.0};
    spec.tx_x_values = {2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    spec.sample_spec.n_samples = 1'000'000;
    spec.sample_spec.seed = 1;
    spec.sample_spec.workers = std::max(1u, std::thread::hardware_concurrency());
    spec.quad = reflectprob::analytic::QuadratureSpec{};

    CliOptions opt;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--rnet", spec.cfg.r_net, "Network disk radius in meters");
        sub->add_option("--tx", opt.tx_text, "Transmitter location \"x,y\"");
        sub->add_option("--rx", opt.rx_text, "Receiver location \"x,y\"");
        sub->add_option("--samples", spec.sample_spec.n_samples, "Monte Carlo samples per row");
        sub->add_option("--seed", spec.sample_spec.seed, "Base RNG seed");
        sub->add_option("--workers", spec.sample_spec.workers, "Monte Carlo worker threads");
        sub->add_option("--tol", spec.quad.rel_tol, "Quadrature relative tolerance");
        sub->add_option("--abs-tol", spec.quad.abs_tol, "Quadrature absolute tolerance");
        sub->add_option("--max-depth", spec.quad.max_depth, "Quadrature subdivision depth limit");
        sub->add_option("--out", spec.output_path, "Output file (default: stdout)");
        sub->add_option("--config", opt.config_path, "JSON config file (flags override it)");
        sub->add_flag("--json", spec.json_output, "Emit rows as a JSON record array");
        sub->add_flag("--show-config", opt.show_config, "Print the effective config and exit");
    };

    auto* sweep_length = app.add_subcommand(
        "sweep-length", "Sweep the object length; one CSV row per length");
    add_common(sweep_length);
    sweep_length->add_option("--lengths", opt.lengths_text, "Comma-separated lengths in meters");

    auto* sweep_tx = app.add_subcommand(
        "sweep-tx", "Sweep the transmitter abscissa at fixed y_tx; rx and length fixed");
    add_common(sweep_tx);
    sweep_tx->add_option("--txx", opt.txx_text, "Comma-separated transmitter x values");
    sweep_tx->add_option("--lengths", opt.lengths_text,
                         "Object length in meters (first value is used)");

    auto* point = app.add_subcommand("point", "Single configuration, one CSV row");
    add_common(point);
    point->add_option("--lengths", opt.lengths_text,
                      "Object length in meters (first value is used)");

    auto* validate = app.add_subcommand(
        "validate", "Cross-check the analytic results against Monte Carlo on random configs");
    add_common(validate);
    validate->add_option("--configs", spec.validate_configs, "Number of random configurations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!opt.config_path.empty()) apply_config_file(spec, opt, opt.config_path);
        // Flags override the config file: re-parse so explicit values win.
        if (!opt.config_path.empty()) {
            try {
                app.clear();
                app.parse(argc, argv);
            } catch (const CLI::ParseError&) {
                return kExitUsage; // already accepted once; should not happen
            }
        }
        if (!opt.tx_text.empty()) spec.cfg.tx = parse_point(opt.tx_text, "--tx");
        if (!opt.rx_text.empty()) spec.cfg.rx = parse_point(opt.rx_text, "--rx");
        if (!opt.lengths_text.empty()) spec.lengths = parse_csv_doubles(opt.lengths_text);
        if (!opt.txx_text.empty()) spec.tx_x_values = parse_csv_doubles(opt.txx_text);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (sweep_length->parsed()) spec.mode = Mode::SweepLength;
    if (sweep_tx->parsed()) spec.mode = Mode::SweepTxX;
    if (point->parsed()) spec.mode = Mode::Point;
    if (validate->parsed()) spec.mode = Mode::Validate;

    // The transmitter sweep defaults to a receiver at the origin unless one
    // was requested explicitly.
    if (spec.mode == Mode::SweepTxX && opt.rx_text.empty() && !opt.rx_from_file) {
        spec.cfg.rx = {0.0, 0.0};
    }

    if (opt.show_config) {
        std::cout << effective_config(spec).dump(2) << "\n";
        return kExitOk;
    }

    try {
        switch (spec.mode) {
        case Mode::SweepLength:
            return emit_rows(spec, reflectprob::experiment::run_sweep_length(spec));
        case Mode::SweepTxX:
            return emit_rows(spec, reflectprob::experiment::run_sweep_tx(spec));
        case Mode::Point:
            return emit_rows(spec, {reflectprob::experiment::run_point(spec)});
        case Mode::Validate: {
            const auto summary = reflectprob::experiment::run_validate(spec, std::cout);
            return summary.n_failed == 0 ? kExitOk : kExitValidationFailure;
        }
        }
    } catch (const reflectprob::InvalidParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return kExitCompute;
    }
    return kExitOk;
} catch (const std::exception& e) {
    std::cerr << "compute error: " << e.what() << "\n";
    return kExitCompute;
}
