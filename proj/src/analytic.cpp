// SPDX-License-Identifier: Apache-2.0
#include "reflectprob/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>

namespace reflectprob::analytic {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kHalfPi = 0.5 * M_PI;

// Slopes outside this band are treated as degenerate and fixed by rotation;
// inside it every formula below is well conditioned at the default tolerances.
constexpr double kMinUsableSlope = 1e-6;
constexpr double kMaxUsableSlope = 1e6;

// A probability may stick out of [0,1] by at most this much before the
// excess is considered a bug rather than quadrature noise.
constexpr double kClampDiagnostic = 1e-7;

bool usable_slope(const geometry::Point2& tx, const geometry::Point2& rx) {
    const double dx = tx.x() - rx.x();
    if (std::abs(dx) < 1e-12 * std::max(1.0, std::abs(tx.x()))) return false;
    const double m = std::abs((tx.y() - rx.y()) / dx);
    return m >= kMinUsableSlope && m <= kMaxUsableSlope;
}

double clamp_probability(double v, const char* what) {
    if (v < -kClampDiagnostic || v > 1.0 + kClampDiagnostic) {
        std::ostringstream msg;
        msg << what << ": value " << v << " lies outside [0,1] beyond quadrature noise";
        throw QuadratureFailureError(msg.str());
    }
    return std::clamp(v, 0.0, 1.0);
}

// Sign changes of fn on [lo, hi], located by a uniform scan followed by
// bisection. Converges to jump points and poles as well as ordinary zeros,
// all of which the integrator wants as panel boundaries.
std::vector<double> sign_change_points(const std::function<double(double)>& fn, double lo,
                                       double hi, int samples = 4096) {
    std::vector<double> roots;
    const double step = (hi - lo) / samples;
    double x_prev = lo + 0.5 * step; // offset so grid points avoid exact case boundaries
    double f_prev = fn(x_prev);
    for (int i = 1; i < samples; ++i) {
        const double x = lo + (i + 0.5) * step;
        const double f = fn(x);
        if (std::isfinite(f_prev) && std::isfinite(f) && (f_prev < 0.0) != (f < 0.0)) {
            double a = x_prev, b = x;
            double fa = f_prev;
            for (int it = 0; it < 64 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = fn(mid);
                if (!std::isfinite(fm)) break;
                if ((fa < 0.0) != (fm < 0.0)) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x_prev = x;
        f_prev = f;
    }
    return roots;
}

struct FrameLine {
    double m; // slope of the tx-rx line in the evaluation frame
    double z; // its intercept
};

FrameLine frame_line(const EvaluationFrame& frame) {
    const auto line = geometry::line_through(frame.tx, frame.rx);
    return FrameLine{line.m, line.z};
}

} // namespace

IntegrationLimits integration_limits(double m) {
    if (!std::isfinite(m)) {
        throw InvalidParameterError("integration_limits: slope must be finite");
    }
    // Half-angle tangents of the two zeros are m +- sqrt(1 + m^2); their
    // product is -1, which gives a cancellation-free form for each sign of m.
    const double s = std::sqrt(1.0 + m * m);
    const double t1 = m >= 0.0 ? m + s : 1.0 / (s - m);
    const double t2 = m <= 0.0 ? m - s : -1.0 / (m + s);
    return IntegrationLimits{2.0 * std::atan(t1), kTwoPi + 2.0 * std::atan(t2)};
}

void validate(const NetworkConfig& cfg) {
    if (!(cfg.r_net > 0.0) || !std::isfinite(cfg.r_net)) {
        throw InvalidParameterError("NetworkConfig: r_net must be positive and finite");
    }
    if (!(cfg.tx.norm() <= cfg.r_net) || !(cfg.rx.norm() <= cfg.r_net)) {
        throw InvalidParameterError("NetworkConfig: tx and rx must lie inside the network disk");
    }
    if (cfg.tx == cfg.rx) {
        throw InvalidParameterError("NetworkConfig: tx and rx must differ");
    }
}

EvaluationFrame usable_frame(const NetworkConfig& cfg) {
    for (double angle : {0.0, M_PI / 7.0, M_PI / 11.0}) {
        const geometry::Point2 tx = geometry::rotated(cfg.tx, angle);
        const geometry::Point2 rx = geometry::rotated(cfg.rx, angle);
        if (usable_slope(tx, rx)) return EvaluationFrame{tx, rx, angle};
    }
    throw DegenerateConfigError("usable_frame: no rotation yields a usable tx-rx slope");
}

std::vector<double> config_breakpoints(const NetworkConfig& cfg) {
    const EvaluationFrame frame = usable_frame(cfg);
    const FrameLine line = frame_line(frame);
    const double mp = geometry::mid_perpendicular(frame.tx, frame.rx).m;

    std::vector<double> pts = {0.0, kHalfPi, M_PI, 1.5 * M_PI, kTwoPi};
    const auto lim = integration_limits(line.m);
    pts.push_back(lim.delta1);
    pts.push_back(lim.delta2);
    const auto lim_p = integration_limits(mp);
    pts.push_back(lim_p.delta1);
    pts.push_back(lim_p.delta2);

    // Sign changes of the two specular-point gate factors.
    const auto gate_a = [&](double a) {
        const double d = mp * std::sin(a) + std::cos(a);
        return 1.0 / d - std::cos(a);
    };
    const auto gate_b = [&](double a) {
        const double d = mp * std::sin(a) + std::cos(a);
        return mp / d - std::sin(a);
    };
    for (const auto& gate : {std::function<double(double)>(gate_a),
                             std::function<double(double)>(gate_b)}) {
        for (double r : sign_change_points(gate, 0.0, kTwoPi)) pts.push_back(r);
    }

    // The specular-point window collapses onto the poles of the gate factors
    // as the object grows, so features next to a switch point can be narrower
    // than the node spacing of an adjacent panel and invisible to the error
    // estimate. Graded panels around every switch point expose any such
    // feature to a panel of comparable width.
    std::vector<double> graded;
    for (double c : pts) {
        double step = 0.25;
        for (int j = 0; j < 14; ++j, step *= 0.25) {
            if (c - step > 0.0) graded.push_back(c - step);
            if (c + step < kTwoPi) graded.push_back(c + step);
        }
    }
    pts.insert(pts.end(), graded.begin(), graded.end());

    std::sort(pts.begin(), pts.end());
    return pts;
}

double pr_event1_approach1(const NetworkConfig& cfg, const QuadratureSpec& quad) {
    validate(cfg);
    const EvaluationFrame frame = usable_frame(cfg);
    const FrameLine line = frame_line(frame);
    const double m = line.m;
    const double z = line.z;
    const double r = cfg.r_net;
    const double x_min = std::min(frame.tx.x(), frame.rx.x());
    const double x_max = std::max(frame.tx.x(), frame.rx.x());
    const double y_min = std::min(frame.tx.y(), frame.rx.y());
    const double y_max = std::max(frame.tx.y(), frame.rx.y());

    // Scaled radial bounds induced by the x- and y-extent of the tx-rx box:
    // f comes from the x-window of the intersection point, g from the
    // y-window mapped through y = m x + z.
    const auto f = [&](double dir, double xi, double sa) { return (dir * xi + z * sa) / r; };
    const auto g = [&](double dir, double yw, double sa) {
        return (dir * (yw - z) / m + z * sa) / r;
    };

    const double gate_pos = heaviside(m);
    const double gate_neg = heaviside_complement(m);

    // Chord direction parallel to the tx-rx line flips the window
    // orientation; the four integrands cover sign(dir) x sign(m).
    const auto theta1 = [&](double a) {
        const double sa = std::sin(a), dir = m * sa + std::cos(a);
        return theta_kernel(f(dir, x_max, sa), g(dir, y_max, sa), f(dir, x_min, sa),
                            g(dir, y_min, sa)) *
               gate_pos;
    };
    const auto theta2 = [&](double a) {
        const double sa = std::sin(a), dir = m * sa + std::cos(a);
        return theta_kernel(f(dir, x_max, sa), g(dir, y_min, sa), f(dir, x_min, sa),
                            g(dir, y_max, sa)) *
               gate_neg;
    };
    const auto theta3 = [&](double a) {
        const double sa = std::sin(a), dir = m * sa + std::cos(a);
        return theta_kernel(f(dir, x_min, sa), g(dir, y_min, sa), f(dir, x_max, sa),
                            g(dir, y_max, sa)) *
               gate_pos;
    };
    const auto theta4 = [&](double a) {
        const double sa = std::sin(a), dir = m * sa + std::cos(a);
        return theta_kernel(f(dir, x_min, sa), g(dir, y_max, sa), f(dir, x_max, sa),
                            g(dir, y_min, sa)) *
               gate_neg;
    };

    const auto lim = integration_limits(m);
    QuadratureSpec spec = quad;
    auto extra = config_breakpoints(cfg);
    spec.breakpoints.insert(spec.breakpoints.end(), extra.begin(), extra.end());
    std::sort(spec.breakpoints.begin(), spec.breakpoints.end());

    double complement = 0.0;
    complement += integrate(theta1, 0.0, lim.delta1, spec);
    complement += integrate(theta1, lim.delta2, kTwoPi, spec);
    complement += integrate(theta2, 0.0, lim.delta1, spec);
    complement += integrate(theta2, lim.delta2, kTwoPi, spec);
    complement += integrate(theta3, lim.delta1, lim.delta2, spec);
    complement += integrate(theta4, lim.delta1, lim.delta2, spec);
    return clamp_probability(1.0 - complement / kTwoPi, "pr_event1_approach1");
}

double pr_event1_approach2(const NetworkConfig& cfg, const QuadratureSpec& quad) {
    validate(cfg);
    const double r = cfg.r_net;
    const double xt = cfg.tx.x(), yt = cfg.tx.y();
    const double xr = cfg.rx.x(), yr = cfg.rx.y();

    // Scaled offsets of tx and rx along the chord normal; both-above and
    // both-below contributions of the radial density 2v.
    const auto rho1 = [&](double a) {
        const double ca = std::cos(a), sa = std::sin(a);
        const double lo = std::min({(xt * ca + yt * sa) / r, (xr * ca + yr * sa) / r, 1.0});
        return lo * lo * heaviside(lo);
    };
    const auto rho2 = [&](double a) {
        const double ca = std::cos(a), sa = std::sin(a);
        const double hi = std::max({(xt * ca + yt * sa) / r, (xr * ca + yr * sa) / r, 0.0});
        return (1.0 - hi * hi) * heaviside(1.0 - hi);
    };

    QuadratureSpec spec = quad;
    auto extra = config_breakpoints(cfg);
    spec.breakpoints.insert(spec.breakpoints.end(), extra.begin(), extra.end());
    std::sort(spec.breakpoints.begin(), spec.breakpoints.end());

    const double total = integrate(rho1, 0.0, kTwoPi, spec) + integrate(rho2, 0.0, kTwoPi, spec);
    return clamp_probability(total / kTwoPi, "pr_event1_approach2");
}

namespace {

// Specular-point integrand machinery. For each alpha the admissible radial
// window is an intersection of two intervals whose endpoints are F at
// +-(L/2) sin(alpha) and G at +-(L/2) cos(alpha); which endpoint is the
// upper one flips with the signs of the gate factors A and B and with the
// quadrant of alpha, giving 4 x 4 argument patterns over the kernel.
struct SpecularIntegrand {
    double mp, zp, half_len, r;

    double operator()(double a, int quadrant) const {
        const double sa = std::sin(a), ca = std::cos(a);
        const double d = mp * sa + ca;
        const double gate_a = 1.0 / d - ca;
        const double gate_b = mp / d - sa;

        const double f_base = zp * sa / d;
        const double g_base = mp * zp * sa / d - zp;
        const double ft = half_len * sa;
        const double gv = half_len * ca;
        // value order: F(+), F(-), G(+), G(-)
        const std::array<double, 4> vals = {
            (ft + f_base) / (gate_a * r), (-ft + f_base) / (gate_a * r),
            (gv + g_base) / (gate_b * r), (-gv + g_base) / (gate_b * r)};

        // Argument patterns (indices into vals) shared by all quadrants:
        //   P0 {F-,G+,F+,G-}  P1 {F-,G-,F+,G+}  P2 {F+,G+,F-,G-}  P3 {F+,G-,F-,G+}
        static constexpr std::array<std::array<int, 4>, 4> kPatterns = {{
            {1, 2, 0, 3}, {1, 3, 0, 2}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
        // Pattern chosen per quadrant and per (sign A, sign B) sub-case
        // (sub-case order: ++, +-, -+, --).
        static constexpr std::array<std::array<int, 4>, 4> kCaseTable = {{
            {0, 1, 2, 3},  // quadrant [3pi/2, 2pi]
            {1, 0, 3, 2},  // quadrant [pi, 3pi/2]
            {2, 3, 0, 1},  // quadrant [0, pi/2]
            {3, 2, 1, 0},  // quadrant [pi/2, pi]
        }};

        const double ha = heaviside(gate_a);
        const double hb = heaviside(gate_b);
        const std::array<double, 4> weights = {ha * hb, ha * (1.0 - hb), (1.0 - ha) * hb,
                                               (1.0 - ha) * (1.0 - hb)};
        double sum = 0.0;
        for (int sub = 0; sub < 4; ++sub) {
            if (weights[sub] == 0.0) continue;
            const auto& p = kPatterns[kCaseTable[quadrant][sub]];
            sum += weights[sub] *
                   theta_kernel(vals[p[0]], vals[p[1]], vals[p[2]], vals[p[3]]);
        }
        return sum;
    }
};

} // namespace

double pr_event2(const NetworkConfig& cfg, double length, const QuadratureSpec& quad) {
    validate(cfg);
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw InvalidParameterError("pr_event2: length must be positive and finite");
    }
    const EvaluationFrame frame = usable_frame(cfg);
    const auto bisector = geometry::mid_perpendicular(frame.tx, frame.rx);
    const SpecularIntegrand gamma{bisector.m, bisector.z, 0.5 * length, cfg.r_net};

    QuadratureSpec spec = quad;
    auto extra = config_breakpoints(cfg);
    spec.breakpoints.insert(spec.breakpoints.end(), extra.begin(), extra.end());
    std::sort(spec.breakpoints.begin(), spec.breakpoints.end());

    double total = 0.0;
    total += integrate([&](double a) { return gamma(a, 0); }, 1.5 * M_PI, kTwoPi, spec);
    total += integrate([&](double a) { return gamma(a, 1); }, M_PI, 1.5 * M_PI, spec);
    total += integrate([&](double a) { return gamma(a, 2); }, 0.0, kHalfPi, spec);
    total += integrate([&](double a) { return gamma(a, 3); }, kHalfPi, M_PI, spec);
    return clamp_probability(total / kTwoPi, "pr_event2");
}

double pr_event3_upper(const NetworkConfig& cfg, double length, const QuadratureSpec& quad) {
    return std::min(pr_event1_approach2(cfg, quad), pr_event2(cfg, length, quad));
}

ReflectionReport analyze(const NetworkConfig& cfg, double length, const QuadratureSpec& quad) {
    ReflectionReport report;
    report.pr_event1_a1 = pr_event1_approach1(cfg, quad);
    report.pr_event1_a2 = pr_event1_approach2(cfg, quad);
    report.pr_event2 = pr_event2(cfg, length, quad);
    report.pr_event3_upper = std::min(report.pr_event1_a2, report.pr_event2);
    return report;
}

} // namespace reflectprob::analytic
