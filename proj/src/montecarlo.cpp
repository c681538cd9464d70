// SPDX-License-Identifier: Apache-2.0
#include "reflectprob/montecarlo.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace reflectprob::montecarlo {

namespace {

// Everything event 2 needs from the configuration, resolved once per run:
// the evaluation frame and the bisector of tx-rx within it.
struct EventContext {
    analytic::EvaluationFrame frame;
    geometry::SlopeLine bisector;

    explicit EventContext(const analytic::NetworkConfig& cfg)
        : frame(analytic::usable_frame(cfg)),
          bisector(geometry::mid_perpendicular(frame.tx, frame.rx)) {}

    // The object as seen in the evaluation frame: a rigid rotation of the
    // segment, with the normal angle shifted to match.
    geometry::SegmentObject framed(const geometry::SegmentObject& obj) const {
        if (frame.angle == 0.0) return obj;
        geometry::SegmentObject turned;
        turned.center = geometry::rotated(obj.center, frame.angle);
        turned.alpha = geometry::wrap_angle(obj.alpha + frame.angle);
        turned.length = obj.length;
        turned.end1 = geometry::rotated(obj.end1, frame.angle);
        turned.end2 = geometry::rotated(obj.end2, frame.angle);
        return turned;
    }

    bool event1(const geometry::SegmentObject& framed_obj) const {
        return geometry::same_side(frame.tx, frame.rx, geometry::supporting_line(framed_obj));
    }

    bool event2(const geometry::SegmentObject& framed_obj) const {
        const auto hit =
            geometry::try_intersect_slope_polar(bisector, geometry::supporting_line(framed_obj));
        if (!hit) return false;
        return geometry::within_bbox(*hit, framed_obj.end1, framed_obj.end2);
    }
};

} // namespace

ProbabilityEstimate make_estimate(std::uint64_t count, std::uint64_t n) {
    const double value = static_cast<double>(count) / static_cast<double>(n);
    return ProbabilityEstimate{value, std::sqrt(value * (1.0 - value) / static_cast<double>(n)),
                               n};
}

bool check_event1(const analytic::NetworkConfig& cfg, const geometry::SegmentObject& obj) {
    return geometry::same_side(cfg.tx, cfg.rx, geometry::supporting_line(obj));
}

bool check_event2(const analytic::NetworkConfig& cfg, const geometry::SegmentObject& obj) {
    const EventContext ctx(cfg);
    return ctx.event2(ctx.framed(obj));
}

EventTriple evaluate_events(const analytic::NetworkConfig& cfg,
                            const geometry::SegmentObject& obj) {
    const EventContext ctx(cfg);
    const auto framed = ctx.framed(obj);
    return EventTriple(ctx.event1(framed), ctx.event2(framed));
}

McReport estimate(const analytic::NetworkConfig& cfg, double length, const SampleSpec& spec) {
    analytic::validate(cfg);
    if (spec.n_samples < 1 || spec.workers < 1) {
        throw InvalidParameterError("estimate: n_samples and workers must be >= 1");
    }
    if (!(length > 0.0)) {
        throw InvalidParameterError("estimate: length must be positive");
    }

    const EventContext ctx(cfg);

    struct Counts {
        std::uint64_t e1 = 0, e2 = 0, e3 = 0;
    };
    const auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        Counts c;
        for (std::uint64_t i = begin; i < end; ++i) {
            const UnitDraw d = draw_for(spec.seed, i);
            const auto obj = sample_object(
                d.u, geometry::wrap_angle(d.alpha + ctx.frame.angle), length, cfg.r_net);
            const bool e1 = ctx.event1(obj);
            const bool e2 = ctx.event2(obj);
            c.e1 += e1;
            c.e2 += e2;
            c.e3 += (e1 && e2);
        }
        return c;
    };

    const std::uint64_t n = spec.n_samples;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(spec.workers, std::max<std::uint64_t>(n, 1)));
    Counts total;
    if (workers == 1) {
        total = run_range(0, n);
    } else {
        std::vector<Counts> partial(workers);
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = n * w / workers;
            const std::uint64_t end = n * (w + 1) / workers;
            threads.emplace_back([&, w, begin, end] { partial[w] = run_range(begin, end); });
        }
        for (auto& t : threads) t.join();
        for (const auto& c : partial) {
            total.e1 += c.e1;
            total.e2 += c.e2;
            total.e3 += c.e3;
        }
    }

    return McReport{make_estimate(total.e1, n), make_estimate(total.e2, n),
                    make_estimate(total.e3, n)};
}

} // namespace reflectprob::montecarlo
