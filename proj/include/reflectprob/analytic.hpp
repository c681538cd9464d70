// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file analytic.hpp
 * @brief Closed-form reflection probabilities, evaluated by 1-D quadrature
 *        over the object's normal angle alpha in [0, 2*pi].
 *
 * Three reflection events for a random segment between a fixed transmitter
 * and receiver:
 *
 *   Event 1  tx and rx lie on the same side of the segment's infinite line
 *            (a metasurface-coated object reflects regardless of geometry).
 *   Event 2  the perpendicular bisector of tx-rx crosses the segment itself
 *            (the specular point of a plain mirror lies on the object).
 *   Event 3  both at once (a plain object acts as a reflector).
 *
 * Pr{Event 1} is computed by two independent formulations that must agree:
 * approach 1 integrates the complement (the chord's intersection with the
 * tx-rx line falls between tx and rx), approach 2 classifies tx and rx
 * against the chord directly. Pr{Event 2} integrates the specular-point
 * condition split over the four quadrants of alpha. Pr{Event 3} only has a
 * Frechet upper bound: min of the other two.
 */

#include <vector>

#include "reflectprob/errors.hpp"
#include "reflectprob/geometry.hpp"
#include "reflectprob/quadrature.hpp"

namespace reflectprob::analytic {

/// Fixed experiment geometry: network disk radius and the probe endpoints.
struct NetworkConfig {
    double r_net = 30.0;            ///< disk radius (meters), > 0
    geometry::Point2 tx{0.0, 0.0};  ///< transmitter, |tx| <= r_net
    geometry::Point2 rx{0.0, 0.0};  ///< receiver, |rx| <= r_net, != tx
};

/// The two zeros of m sin(alpha) + cos(alpha) on (0, 2*pi): the angles at
/// which the chord direction is parallel to the tx-rx line.
struct IntegrationLimits {
    double delta1 = 0.0; ///< 2 atan(m + sqrt(1 + m^2)), in (0, pi)
    double delta2 = 0.0; ///< 2*pi + 2 atan(m - sqrt(1 + m^2)), in (pi, 2*pi)
};

/// All analytic outputs for one configuration and object length.
struct ReflectionReport {
    double pr_event1_a1 = 0.0;
    double pr_event1_a2 = 0.0;
    double pr_event2 = 0.0;
    double pr_event3_upper = 0.0;
};

/// tx/rx rotated about the origin so the connecting line has a usable
/// finite, nonzero slope. angle is 0 when no rotation was needed; rotation
/// leaves every probability unchanged because the object law is isotropic.
struct EvaluationFrame {
    geometry::Point2 tx{0.0, 0.0};
    geometry::Point2 rx{0.0, 0.0};
    double angle = 0.0;
};

/// Unit step with H(0) = 1.
inline double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }

/// Complementary step, 1 - H(x) (so 0 at x = 0).
inline double heaviside_complement(double x) { return 1.0 - heaviside(x); }

/**
 * @brief Probability mass of the radial density f(v) = 2v on the interval
 *        [max(mu3, mu4, 0), min(mu1, mu2, 1)].
 *
 * Returns min^2 - max^2 when the clipped interval is nonempty, else 0;
 * always in [0, 1].
 */
inline double theta_kernel(double mu1, double mu2, double mu3, double mu4) {
    const double hi = std::min({mu1, mu2, 1.0});
    const double lo = std::max({mu3, mu4, 0.0});
    if (!(hi >= lo)) return 0.0; // also rejects NaN arguments
    return hi * hi - lo * lo;
}

/// @throws InvalidParameterError when the slope is not finite.
IntegrationLimits integration_limits(double m);

/// @throws InvalidParameterError on r_net <= 0, endpoints outside the disk,
///         or tx == rx.
void validate(const NetworkConfig& cfg);

/// Rotation fix for vertical/horizontal (or extreme-slope) tx-rx lines:
/// tries angles 0, pi/7, pi/11 and returns the first frame whose slope
/// magnitude falls in [1e-6, 1e6].
/// @throws DegenerateConfigError when none works (not reachable for finite
///         distinct endpoints, kept as a guard).
EvaluationFrame usable_frame(const NetworkConfig& cfg);

/// Per-configuration integrand switch points on [0, 2*pi]: the zeros of
/// m sin(a) + cos(a) for the tx-rx slope and its perpendicular, the quadrant
/// boundaries, and the sign changes of the two specular-point gate factors.
std::vector<double> config_breakpoints(const NetworkConfig& cfg);

/// Pr{Event 1} via the complement (chord meets the tx-rx segment).
double pr_event1_approach1(const NetworkConfig& cfg, const QuadratureSpec& quad);

/// Pr{Event 1} via same-side classification of tx and rx; needs no slope,
/// so it is total even for vertical/horizontal tx-rx lines.
double pr_event1_approach2(const NetworkConfig& cfg, const QuadratureSpec& quad);

/// Pr{Event 2}: the perpendicular bisector of tx-rx crosses the segment.
double pr_event2(const NetworkConfig& cfg, double length, const QuadratureSpec& quad);

/// Frechet upper bound min(Pr{Event 1}, Pr{Event 2}) on Pr{Event 3}.
double pr_event3_upper(const NetworkConfig& cfg, double length, const QuadratureSpec& quad);

/// All four analytic outputs at once.
ReflectionReport analyze(const NetworkConfig& cfg, double length, const QuadratureSpec& quad);

} // namespace reflectprob::analytic
