// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "reflectprob/analytic.hpp"
#include "reflectprob/rng.hpp"

using namespace reflectprob;
using analytic::NetworkConfig;
using analytic::QuadratureSpec;

namespace {

struct Uniform {
    std::uint64_t seed;
    std::uint64_t counter = 0;
    double next() { return montecarlo::to_unit_interval(montecarlo::counter_word(seed, counter++)); }
    double range(double lo, double hi) { return lo + (hi - lo) * next(); }
};

NetworkConfig fig8_config() { return NetworkConfig{30.0, {0.0, 3.0}, {20.0, 20.0}}; }

// Random config with endpoints in the disk and a slope away from the
// degenerate band, mirroring the validation sampler.
NetworkConfig random_config(Uniform& rng, double r_net = 30.0) {
    while (true) {
        const double r1 = r_net * std::sqrt(rng.next());
        const double a1 = rng.range(0, 2 * M_PI);
        const double r2 = r_net * std::sqrt(rng.next());
        const double a2 = rng.range(0, 2 * M_PI);
        NetworkConfig cfg{r_net,
                          {r1 * std::cos(a1), r1 * std::sin(a1)},
                          {r2 * std::cos(a2), r2 * std::sin(a2)}};
        const double dx = cfg.tx.x() - cfg.rx.x();
        if (std::abs(dx) < 1e-9) continue;
        const double m = std::abs((cfg.tx.y() - cfg.rx.y()) / dx);
        if (m < 1e-6 || m > 1e6) continue;
        if ((cfg.tx - cfg.rx).norm() < 0.5) continue;
        return cfg;
    }
}

} // namespace

TEST_CASE("heaviside convention H(0) = 1") {
    CHECK(analytic::heaviside(2.5) == 1.0);
    CHECK(analytic::heaviside(-0.1) == 0.0);
    CHECK(analytic::heaviside(0.0) == 1.0);
    CHECK(analytic::heaviside_complement(0.0) == 0.0);
    CHECK(analytic::heaviside_complement(-3.0) == 1.0);
}

TEST_CASE("theta_kernel on the given tuples") {
    CHECK(analytic::theta_kernel(1, 1, 0, 0) == doctest::Approx(1.0));
    CHECK(analytic::theta_kernel(0.2, 0.9, 0.5, 0.1) == doctest::Approx(0.0));
    CHECK(analytic::theta_kernel(0.8, 0.6, 0.3, 0.2) == doctest::Approx(0.27));
}

// theta_kernel must equal the integral of the radial density 2v over the
// clipped interval; brute-force midpoint integration is the oracle.
TEST_CASE("theta_kernel against the density-integral oracle") {
    Uniform rng{404040};
    for (int i = 0; i < 10000; ++i) {
        const double mu1 = rng.range(-2, 2), mu2 = rng.range(-2, 2);
        const double mu3 = rng.range(-2, 2), mu4 = rng.range(-2, 2);
        const double hi = std::min({mu1, mu2, 1.0});
        const double lo = std::max({mu3, mu4, 0.0});
        double expected = 0.0;
        if (hi > lo) {
            const int n = 2000;
            const double h = (hi - lo) / n;
            for (int k = 0; k < n; ++k) {
                const double v = lo + (k + 0.5) * h;
                expected += 2.0 * v * h;
            }
        }
        const double got = analytic::theta_kernel(mu1, mu2, mu3, mu4);
        REQUIRE(got == doctest::Approx(expected).epsilon(1e-6));
        REQUIRE(got >= 0.0);
        REQUIRE(got <= 1.0);
    }
}

TEST_CASE("integration limits are the zeros of m sin(a) + cos(a)") {
    Uniform rng{11};
    for (int i = 0; i < 1000; ++i) {
        const double m = std::tan(rng.range(-1.5, 1.5));
        const auto lim = analytic::integration_limits(m);
        CHECK(lim.delta1 > 0.0);
        CHECK(lim.delta1 < lim.delta2);
        CHECK(lim.delta2 < 2 * M_PI);
        CHECK(std::abs(m * std::sin(lim.delta1) + std::cos(lim.delta1)) < 1e-9);
        CHECK(std::abs(m * std::sin(lim.delta2) + std::cos(lim.delta2)) < 1e-9);
    }
    // edges of the usable-slope band
    for (double m : {1e-6, -1e-6, 1e6, -1e6}) {
        const auto lim = analytic::integration_limits(m);
        CHECK(lim.delta1 > 0.0);
        CHECK(lim.delta1 < lim.delta2);
        CHECK(lim.delta2 < 2 * M_PI);
        CHECK(std::abs(m * std::sin(lim.delta1) + std::cos(lim.delta1)) < 1e-9);
        CHECK(std::abs(m * std::sin(lim.delta2) + std::cos(lim.delta2)) < 1e-9);
    }
    CHECK_THROWS_AS(analytic::integration_limits(std::nan("")), InvalidParameterError);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(analytic::validate(NetworkConfig{-1.0, {0, 0}, {1, 1}}),
                    InvalidParameterError);
    CHECK_THROWS_AS(analytic::validate(NetworkConfig{30.0, {40, 0}, {1, 1}}),
                    InvalidParameterError);
    CHECK_THROWS_AS(analytic::validate(NetworkConfig{30.0, {1, 1}, {1, 1}}),
                    InvalidParameterError);
    CHECK_NOTHROW(analytic::validate(fig8_config()));
}

TEST_CASE("usable_frame rotates only when needed") {
    const auto id = analytic::usable_frame(fig8_config());
    CHECK(id.angle == 0.0);

    // vertical tx-rx: rotation kicks in and preserves the norm
    const auto rot = analytic::usable_frame(NetworkConfig{30.0, {5, -3}, {5, 9}});
    CHECK(rot.angle != 0.0);
    CHECK(rot.tx.norm() == doctest::Approx(std::hypot(5, 3)));
    CHECK(std::abs(rot.tx.x() - rot.rx.x()) > 1e-6);

    // horizontal tx-rx as well
    const auto rot2 = analytic::usable_frame(NetworkConfig{30.0, {-4, 2}, {10, 2}});
    CHECK(rot2.angle != 0.0);
}

TEST_CASE("both event-1 formulations coincide") {
    QuadratureSpec quad;
    const double a1 = analytic::pr_event1_approach1(fig8_config(), quad);
    const double a2 = analytic::pr_event1_approach2(fig8_config(), quad);
    CHECK(std::abs(a1 - a2) < 1e-6);

    Uniform rng{314159};
    for (int i = 0; i < 25; ++i) {
        const auto cfg = random_config(rng);
        const double b1 = analytic::pr_event1_approach1(cfg, quad);
        const double b2 = analytic::pr_event1_approach2(cfg, quad);
        REQUIRE(std::abs(b1 - b2) < 1e-6);
        REQUIRE(b1 >= 0.0);
        REQUIRE(b1 <= 1.0);
    }
}

TEST_CASE("event-1 probability approaches 1 near the origin") {
    QuadratureSpec quad;
    const NetworkConfig cfg{30.0, {0.0, 0.01}, {0.01, 0.0}};
    const double a2 = analytic::pr_event1_approach2(cfg, quad);
    CHECK(a2 > 1.0 - 1e-3);
    CHECK(a2 <= 1.0);
}

TEST_CASE("approach 2 is total for degenerate tx-rx slopes") {
    QuadratureSpec quad;
    // vertical and horizontal pairs evaluate without any rotation
    const double v = analytic::pr_event1_approach2(NetworkConfig{30.0, {5, -3}, {5, 9}}, quad);
    const double h = analytic::pr_event1_approach2(NetworkConfig{30.0, {-4, 2}, {10, 2}}, quad);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(h >= 0.0);
    CHECK(h <= 1.0);
    // approach 1 agrees via its rotation fix
    CHECK(std::abs(analytic::pr_event1_approach1(NetworkConfig{30.0, {5, -3}, {5, 9}}, quad) - v) <
          1e-6);
    CHECK(std::abs(analytic::pr_event1_approach1(NetworkConfig{30.0, {-4, 2}, {10, 2}}, quad) - h) <
          1e-6);
}

TEST_CASE("joint rotation about the origin leaves the probabilities unchanged") {
    QuadratureSpec tight;
    tight.rel_tol = 1e-11;
    const auto cfg = fig8_config();
    const double base_a2 = analytic::pr_event1_approach2(cfg, tight);
    const double base_e2 = analytic::pr_event2(cfg, 5.0, tight);
    for (double angle : {0.3, 1.2, 2.8, 4.5}) {
        NetworkConfig turned = cfg;
        turned.tx = geometry::rotated(cfg.tx, angle);
        turned.rx = geometry::rotated(cfg.rx, angle);
        CHECK(std::abs(analytic::pr_event1_approach2(turned, tight) - base_a2) < 1e-9);
        CHECK(std::abs(analytic::pr_event2(turned, 5.0, tight) - base_e2) < 1e-8);
    }
}

TEST_CASE("swapping tx and rx changes nothing") {
    QuadratureSpec quad;
    const auto cfg = fig8_config();
    NetworkConfig swapped{cfg.r_net, cfg.rx, cfg.tx};
    CHECK(std::abs(analytic::pr_event1_approach1(cfg, quad) -
                   analytic::pr_event1_approach1(swapped, quad)) < 1e-9);
    CHECK(std::abs(analytic::pr_event1_approach2(cfg, quad) -
                   analytic::pr_event1_approach2(swapped, quad)) < 1e-9);
    CHECK(std::abs(analytic::pr_event2(cfg, 5.0, quad) -
                   analytic::pr_event2(swapped, 5.0, quad)) < 1e-9);
}

TEST_CASE("specular-point probability vanishes with the object length") {
    QuadratureSpec quad;
    CHECK(analytic::pr_event2(fig8_config(), 1e-8, quad) < 1e-6);
}

TEST_CASE("specular-point probability grows with the object length") {
    QuadratureSpec quad;
    const auto cfg = fig8_config();
    const double p5 = analytic::pr_event2(cfg, 5.0, quad);
    const double p20 = analytic::pr_event2(cfg, 20.0, quad);
    CHECK(p20 > p5);
    CHECK(p5 > 0.0);
    CHECK(p20 < 1.0);
}

TEST_CASE("huge objects: the near-parallel window is still resolved") {
    // For lengths far beyond the disk the bisector misses the segment only in
    // a narrow angle window around its parallel directions; the quadrature
    // must not lose it.
    QuadratureSpec quad;
    const auto cfg = fig8_config();
    const double p = analytic::pr_event2(cfg, 1e5, quad);
    CHECK(p < 1.0 - 1e-4);
    CHECK(p > 1.0 - 1e-3);
}

TEST_CASE("upper bound is the min of its two inputs") {
    QuadratureSpec quad;
    const auto cfg = fig8_config();
    const auto report = analytic::analyze(cfg, 5.0, quad);
    CHECK(report.pr_event3_upper ==
          doctest::Approx(std::min(report.pr_event1_a2, report.pr_event2)));
    CHECK(report.pr_event3_upper <= report.pr_event1_a2);
    CHECK(report.pr_event3_upper <= report.pr_event2);
    CHECK(std::abs(analytic::pr_event3_upper(cfg, 5.0, quad) - report.pr_event3_upper) < 1e-12);
}

TEST_CASE("invalid lengths are rejected") {
    QuadratureSpec quad;
    CHECK_THROWS_AS(analytic::pr_event2(fig8_config(), 0.0, quad), InvalidParameterError);
    CHECK_THROWS_AS(analytic::pr_event2(fig8_config(), -2.0, quad), InvalidParameterError);
}

// Deterministic cross-check of the whole analytic chain: integrate the raw
// per-sample event indicators over the (alpha, v) parameter square with the
// density 2v/(2pi) on a midpoint grid. No quadrature, no sampling noise;
// accuracy is limited only by the grid resolution at the event boundaries.
TEST_CASE("grid integration of the event indicators matches the analytic values") {
    struct Scenario {
        NetworkConfig cfg;
        double length;
    };
    // positive- and negative-slope tx-rx pairs exercise both integrand pairs
    const Scenario scenarios[] = {
        {fig8_config(), 5.0},
        {NetworkConfig{30.0, {-6.0, 14.0}, {11.0, -9.0}}, 12.0},
    };
    for (const auto& sc : scenarios) {
        const auto& cfg = sc.cfg;
        const auto bisector = geometry::mid_perpendicular(cfg.tx, cfg.rx);

        const int na = 2400, nv = 2400;
        double e1_mass = 0.0, e2_mass = 0.0;
        for (int i = 0; i < na; ++i) {
            const double a = (i + 0.5) * 2.0 * M_PI / na;
            const double ca = std::cos(a), sa = std::sin(a);
            const double s_tx = cfg.tx.x() * ca + cfg.tx.y() * sa;
            const double s_rx = cfg.rx.x() * ca + cfg.rx.y() * sa;
            const double denom = bisector.m * sa + ca;
            double e1_col = 0.0, e2_col = 0.0;
            for (int j = 0; j < nv; ++j) {
                const double v = (j + 0.5) / nv;
                const double p = cfg.r_net * v;
                const double w = 2.0 * v;
                if ((s_tx - p) * (s_rx - p) > 0.0) e1_col += w;
                if (std::abs(denom) > 1e-12) {
                    const double xs = (p - bisector.z * sa) / denom;
                    const double ys = bisector.m * xs + bisector.z;
                    const double cx = p * ca, cy = p * sa;
                    const double hx = 0.5 * sc.length * sa, hy = 0.5 * sc.length * ca;
                    if (geometry::within_bbox({xs, ys}, {cx - hx, cy + hy},
                                              {cx + hx, cy - hy})) {
                        e2_col += w;
                    }
                }
            }
            e1_mass += e1_col;
            e2_mass += e2_col;
        }
        const double grid_e1 = e1_mass / (static_cast<double>(na) * nv);
        const double grid_e2 = e2_mass / (static_cast<double>(na) * nv);

        QuadratureSpec quad;
        CHECK(std::abs(grid_e1 - analytic::pr_event1_approach1(cfg, quad)) < 3e-3);
        CHECK(std::abs(grid_e1 - analytic::pr_event1_approach2(cfg, quad)) < 3e-3);
        CHECK(std::abs(grid_e2 - analytic::pr_event2(cfg, sc.length, quad)) < 2e-3);
    }
}
