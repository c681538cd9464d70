// SPDX-License-Identifier: Apache-2.0
#include "reflectprob/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "reflectprob/rng.hpp"

namespace reflectprob::experiment {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Stream tag for the validate-mode config sampler, so its draws never
// coincide with the Monte Carlo sample streams derived from the same seed.
constexpr std::uint64_t kConfigStreamTag = 0x636f6e66696773ull;

geometry::Point2 draw_in_disk(std::uint64_t seed, std::uint64_t& counter, double r_net) {
    const double u = montecarlo::to_unit_interval(montecarlo::counter_word(seed, counter++));
    const double t = montecarlo::to_unit_interval(montecarlo::counter_word(seed, counter++));
    const double r = r_net * std::sqrt(u);
    const double phi = kTwoPi * t;
    return geometry::Point2{r * std::cos(phi), r * std::sin(phi)};
}

bool nondegenerate_pair(const geometry::Point2& tx, const geometry::Point2& rx) {
    if ((tx - rx).norm() < 1.0) return false; // keep the event probabilities away from 0/1
    const double dx = tx.x() - rx.x();
    if (std::abs(dx) < 1e-9 * std::max(1.0, std::abs(tx.x()))) return false;
    const double m = std::abs((tx.y() - rx.y()) / dx);
    return m > 1e-6 && m < 1e6;
}

} // namespace

ResultRow compute_row(const analytic::NetworkConfig& cfg, double length, double sweep_value,
                      const montecarlo::SampleSpec& sample_spec,
                      const analytic::QuadratureSpec& quad) {
    ResultRow row;
    row.sweep_value = sweep_value;
    const auto report = analytic::analyze(cfg, length, quad);
    row.pr_e1_a1 = report.pr_event1_a1;
    row.pr_e1_a2 = report.pr_event1_a2;
    row.pr_e2 = report.pr_event2;
    row.pr_e3_upper = report.pr_event3_upper;
    const auto mc = montecarlo::estimate(cfg, length, sample_spec);
    row.mc_e1 = mc.e1.value;
    row.mc_e1_se = mc.e1.std_err;
    row.mc_e2 = mc.e2.value;
    row.mc_e2_se = mc.e2.std_err;
    row.mc_e3 = mc.e3.value;
    row.mc_e3_se = mc.e3.std_err;
    row.n = sample_spec.n_samples;
    row.seed = sample_spec.seed;
    return row;
}

std::vector<ResultRow> run_sweep_length(const ExperimentSpec& spec) {
    if (spec.lengths.empty()) {
        throw InvalidParameterError("sweep-length: needs a non-empty lengths list");
    }
    std::vector<ResultRow> rows;
    rows.reserve(spec.lengths.size());
    for (std::size_t i = 0; i < spec.lengths.size(); ++i) {
        montecarlo::SampleSpec sample = spec.sample_spec;
        sample.seed = spec.sample_spec.seed + i;
        try {
            rows.push_back(compute_row(spec.cfg, spec.lengths[i], spec.lengths[i], sample,
                                       spec.quad));
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << "sweep-length row L=" << spec.lengths[i] << ": " << e.what();
            throw Error(msg.str());
        }
    }
    return rows;
}

std::vector<ResultRow> run_sweep_tx(const ExperimentSpec& spec) {
    if (spec.tx_x_values.empty()) {
        throw InvalidParameterError("sweep-tx: needs a non-empty tx abscissa list");
    }
    if (spec.lengths.empty()) {
        throw InvalidParameterError("sweep-tx: needs a length (first entry of lengths)");
    }
    const double length = spec.lengths.front();
    const double y_tx = spec.cfg.tx.y();
    for (double x : spec.tx_x_values) {
        if (std::hypot(x, y_tx) > spec.cfg.r_net) {
            std::ostringstream msg;
            msg << "sweep-tx: x_tx=" << x << " places the transmitter outside the disk (r_net="
                << spec.cfg.r_net << ")";
            throw InvalidParameterError(msg.str());
        }
    }
    std::vector<ResultRow> rows;
    rows.reserve(spec.tx_x_values.size());
    for (std::size_t i = 0; i < spec.tx_x_values.size(); ++i) {
        analytic::NetworkConfig cfg = spec.cfg;
        cfg.tx = geometry::Point2{spec.tx_x_values[i], y_tx};
        montecarlo::SampleSpec sample = spec.sample_spec;
        sample.seed = spec.sample_spec.seed + i;
        try {
            rows.push_back(compute_row(cfg, length, spec.tx_x_values[i], sample, spec.quad));
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << "sweep-tx row x_tx=" << spec.tx_x_values[i] << ": " << e.what();
            throw Error(msg.str());
        }
    }
    return rows;
}

ResultRow run_point(const ExperimentSpec& spec) {
    if (spec.lengths.empty()) {
        throw InvalidParameterError("point: needs a length (first entry of lengths)");
    }
    return compute_row(spec.cfg, spec.lengths.front(), spec.lengths.front(), spec.sample_spec,
                       spec.quad);
}

ValidationSummary run_validate(const ExperimentSpec& spec, std::ostream& log) {
    if (spec.validate_configs < 1) {
        throw InvalidParameterError("validate: config count must be >= 1");
    }
    const std::uint64_t sampler_seed = spec.sample_spec.seed ^ kConfigStreamTag;
    std::uint64_t counter = 0;

    ValidationSummary summary;
    summary.n_configs = spec.validate_configs;
    for (int k = 0; k < spec.validate_configs; ++k) {
        analytic::NetworkConfig cfg;
        cfg.r_net = spec.cfg.r_net;
        do {
            cfg.tx = draw_in_disk(sampler_seed, counter, cfg.r_net);
            cfg.rx = draw_in_disk(sampler_seed, counter, cfg.r_net);
        } while (!nondegenerate_pair(cfg.tx, cfg.rx));
        const double length =
            1.0 + 24.0 * montecarlo::to_unit_interval(
                             montecarlo::counter_word(sampler_seed, counter++));

        montecarlo::SampleSpec sample = spec.sample_spec;
        sample.seed = spec.sample_spec.seed + static_cast<std::uint64_t>(k);

        const auto report = analytic::analyze(cfg, length, spec.quad);
        const auto mc = montecarlo::estimate(cfg, length, sample);

        const double d_formulations = std::abs(report.pr_event1_a1 - report.pr_event1_a2);
        const double d_e1 = std::abs(report.pr_event1_a2 - mc.e1.value);
        const double d_e2 = std::abs(report.pr_event2 - mc.e2.value);
        const double bound_slack =
            mc.e3.value - report.pr_event3_upper - 4.0 * std::max(mc.e1.std_err, mc.e2.std_err);

        const bool ok = d_formulations < 1e-6 && d_e1 < 4.0 * mc.e1.std_err &&
                        d_e2 < 4.0 * mc.e2.std_err && bound_slack <= 0.0;
        if (!ok) ++summary.n_failed;

        log << (ok ? "PASS" : "FAIL") << " config " << k << ": tx=(" << fmt12(cfg.tx.x()) << ","
            << fmt12(cfg.tx.y()) << ") rx=(" << fmt12(cfg.rx.x()) << "," << fmt12(cfg.rx.y())
            << ") L=" << fmt12(length) << " |a1-a2|=" << fmt12(d_formulations)
            << " |a2-mc1|=" << fmt12(d_e1) << " (4se=" << fmt12(4.0 * mc.e1.std_err) << ")"
            << " |p2-mc2|=" << fmt12(d_e2) << " (4se=" << fmt12(4.0 * mc.e2.std_err) << ")"
            << " bound_slack=" << fmt12(bound_slack) << "\n";
    }
    log << "validate: " << (summary.n_configs - summary.n_failed) << "/" << summary.n_configs
        << " configs passed\n";
    return summary;
}

std::string csv_header() {
    return "sweep_value,pr_e1_a1,pr_e1_a2,pr_e2,pr_e3_upper,"
           "mc_e1,mc_e1_se,mc_e2,mc_e2_se,mc_e3,mc_e3_se,n,seed";
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << csv_header() << "\n";
    for (const auto& r : rows) {
        out << fmt12(r.sweep_value) << ',' << fmt12(r.pr_e1_a1) << ',' << fmt12(r.pr_e1_a2)
            << ',' << fmt12(r.pr_e2) << ',' << fmt12(r.pr_e3_upper) << ',' << fmt12(r.mc_e1)
            << ',' << fmt12(r.mc_e1_se) << ',' << fmt12(r.mc_e2) << ',' << fmt12(r.mc_e2_se)
            << ',' << fmt12(r.mc_e3) << ',' << fmt12(r.mc_e3_se) << ',' << r.n << ',' << r.seed
            << "\n";
    }
}

void write_json(const std::vector<ResultRow>& rows, std::ostream& out) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"sweep_value", r.sweep_value},
                       {"pr_e1_a1", r.pr_e1_a1},
                       {"pr_e1_a2", r.pr_e1_a2},
                       {"pr_e2", r.pr_e2},
                       {"pr_e3_upper", r.pr_e3_upper},
                       {"mc_e1", r.mc_e1},
                       {"mc_e1_se", r.mc_e1_se},
                       {"mc_e2", r.mc_e2},
                       {"mc_e2_se", r.mc_e2_se},
                       {"mc_e3", r.mc_e3},
                       {"mc_e3_se", r.mc_e3_se},
                       {"n", r.n},
                       {"seed", r.seed}});
    }
    out << arr.dump(2) << "\n";
}

} // namespace reflectprob::experiment
