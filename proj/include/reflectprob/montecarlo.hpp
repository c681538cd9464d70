// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file montecarlo.hpp
 * @brief Stochastic reference for the analytic module: draws random segment
 *        objects, checks the three reflection events with exact geometry and
 *        returns frequency estimates with binomial standard errors.
 *
 * Per-sample randomness is a pure function of (seed, sample index), so runs
 * are bit-identical for a given (seed, n_samples) no matter how the index
 * range is partitioned across workers.
 */

#include <cstdint>

#include "reflectprob/analytic.hpp"
#include "reflectprob/geometry.hpp"
#include "reflectprob/rng.hpp"

namespace reflectprob::montecarlo {

/// Sampling protocol: how many draws, which stream, how many threads.
struct SampleSpec {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

/// Per-sample event indicators; the joint event is the conjunction.
struct EventTriple {
    bool event1;
    bool event2;
    bool event3;

    EventTriple(bool e1, bool e2) : event1(e1), event2(e2), event3(e1 && e2) {}
};

/// Frequency estimate with its binomial standard error.
struct ProbabilityEstimate {
    double value = 0.0;
    double std_err = 0.0;
    std::uint64_t n = 0;
};

/// Estimates for the three events from one run.
struct McReport {
    ProbabilityEstimate e1;
    ProbabilityEstimate e2;
    ProbabilityEstimate e3;
};

/// Estimate from a raw success count.
ProbabilityEstimate make_estimate(std::uint64_t count, std::uint64_t n);

/// The random object for a (u, alpha) draw: center at distance
/// r_net * sqrt(u) from the origin in direction alpha, perpendicular to it.
/// The scaled distance v = p / r_net then has density 2v on [0, 1].
inline geometry::SegmentObject sample_object(double u, double alpha, double length,
                                             double r_net) {
    return geometry::object_from_params(u, alpha, length, r_net);
}

/// Event 1: tx and rx on the same side of the object's infinite line.
bool check_event1(const analytic::NetworkConfig& cfg, const geometry::SegmentObject& obj);

/// Event 2: the perpendicular bisector of tx-rx meets the segment itself
/// (intersection with the supporting line falls inside the endpoint box).
/// Degenerate tx-rx slopes are handled by rotating tx, rx and the object
/// jointly, which leaves the indicator unchanged. False when the bisector
/// is parallel to the object line.
bool check_event2(const analytic::NetworkConfig& cfg, const geometry::SegmentObject& obj);

/// Both events for one object, evaluated consistently in one frame.
EventTriple evaluate_events(const analytic::NetworkConfig& cfg,
                            const geometry::SegmentObject& obj);

/// Frequency estimates over spec.n_samples objects of the given length.
/// Bit-identical output for identical (seed, n_samples) regardless of
/// worker count; Event-1 counts do not depend on length at all.
McReport estimate(const analytic::NetworkConfig& cfg, double length, const SampleSpec& spec);

} // namespace reflectprob::montecarlo
