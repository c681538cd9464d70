// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file experiment.hpp
 * @brief Batch experiment driver: parameter sweeps with analytic and Monte
 *        Carlo columns side by side, CSV/JSON emission, and an end-to-end
 *        self-validation mode.
 */

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "reflectprob/analytic.hpp"
#include "reflectprob/montecarlo.hpp"

namespace reflectprob::experiment {

enum class Mode { SweepLength, SweepTxX, Point, Validate };

/// Full description of one batch run.
struct ExperimentSpec {
    Mode mode = Mode::Point;
    analytic::NetworkConfig cfg;
    std::vector<double> lengths;     ///< sweep-length grid; first entry is the
                                     ///< fixed length for sweep-tx / point mode
    std::vector<double> tx_x_values; ///< sweep-tx grid for the transmitter abscissa
    montecarlo::SampleSpec sample_spec;
    analytic::QuadratureSpec quad;
    std::string output_path;         ///< empty = stdout
    bool json_output = false;
    int validate_configs = 100;      ///< number of random configs in Validate mode
};

/// One sweep point: analytic columns, Monte Carlo columns, run metadata.
struct ResultRow {
    double sweep_value = 0.0;
    double pr_e1_a1 = 0.0;
    double pr_e1_a2 = 0.0;
    double pr_e2 = 0.0;
    double pr_e3_upper = 0.0;
    double mc_e1 = 0.0;
    double mc_e1_se = 0.0;
    double mc_e2 = 0.0;
    double mc_e2_se = 0.0;
    double mc_e3 = 0.0;
    double mc_e3_se = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

/// Analytic + Monte Carlo columns for one (cfg, length) point.
ResultRow compute_row(const analytic::NetworkConfig& cfg, double length, double sweep_value,
                      const montecarlo::SampleSpec& sample_spec,
                      const analytic::QuadratureSpec& quad);

/// One row per length in spec.lengths; row seeds derive as seed + row index.
std::vector<ResultRow> run_sweep_length(const ExperimentSpec& spec);

/// One row per x in spec.tx_x_values with tx = (x, cfg.tx.y) and the fixed
/// length spec.lengths.front().
/// @throws InvalidParameterError when a grid point leaves the network disk.
std::vector<ResultRow> run_sweep_tx(const ExperimentSpec& spec);

/// Single row for the configured point.
ResultRow run_point(const ExperimentSpec& spec);

/// Outcome of the self-validation protocol.
struct ValidationSummary {
    int n_configs = 0;
    int n_failed = 0;
};

/// Cross-checks analytic outputs against each other and against Monte Carlo
/// over random non-degenerate configurations; one pass/fail line per config
/// is written to `log`. Gates: |a1 - a2| < 1e-6, analytic-vs-MC within four
/// standard errors, and the joint-event frequency below its upper bound.
ValidationSummary run_validate(const ExperimentSpec& spec, std::ostream& log);

/// Fixed CSV schema shared by all sweep modes.
std::string csv_header();
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_json(const std::vector<ResultRow>& rows, std::ostream& out);

} // namespace reflectprob::experiment
