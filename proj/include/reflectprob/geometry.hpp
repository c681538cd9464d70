// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file geometry.hpp
 * @brief Planar primitives for the reflector-probability model.
 *
 * Everything here is a pure function of its inputs; values are immutable
 * and safe to share between threads. Coordinates are in meters. Three line
 * representations are used side by side:
 *
 *   SlopeLine    y = m x + z            (never vertical)
 *   GeneralLine  a x + b y + c = 0
 *   PolarLine    x cos(alpha) + y sin(alpha) = p,  p >= 0
 *
 * Vertical and horizontal transmitter-receiver lines are not representable
 * as SlopeLine / its perpendicular; callers handle them by rotating the
 * whole scene about the origin (see analytic::usable_frame), which is valid
 * because the random-object distribution is isotropic.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>

#include "reflectprob/errors.hpp"

namespace reflectprob::geometry {

/// Planar location in meters.
using Point2 = Eigen::Vector2d;

/// Non-vertical infinite line y = m x + z.
struct SlopeLine {
    double m = 0.0; ///< slope (dimensionless)
    double z = 0.0; ///< intercept (meters)
};

/// Infinite line a x + b y + c = 0 with (a, b) != (0, 0).
struct GeneralLine {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Infinite line x cos(alpha) + y sin(alpha) = p.
struct PolarLine {
    double p = 0.0;     ///< perpendicular distance from the origin (meters), >= 0
    double alpha = 0.0; ///< normal direction (radians), in [0, 2*pi)
};

/// Relation of a point to a non-vertical line.
enum class SideClassification { Above, Below, On };

/// Random line segment: center, normal angle, length and derived endpoints.
/// The segment is perpendicular to the radius through its center; end1/end2
/// are center -/+ (length/2) * (sin(alpha), -cos(alpha)).
struct SegmentObject {
    Point2 center{0.0, 0.0};
    double alpha = 0.0;
    double length = 0.0;
    Point2 end1{0.0, 0.0};
    Point2 end2{0.0, 0.0};
};

/// Signed offset of a point from a polar line: x cos(alpha) + y sin(alpha) - p.
/// Positive on the far side of the line as seen from the origin.
inline double polar_offset(const PolarLine& line, const Point2& pt) {
    return pt.x() * std::cos(line.alpha) + pt.y() * std::sin(line.alpha) - line.p;
}

/// Point rotated about the origin by `angle` radians.
inline Point2 rotated(const Point2& pt, double angle) {
    return Eigen::Rotation2Dd(angle) * pt;
}

/// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * M_PI;
    double r = std::fmod(a, two_pi);
    return r < 0.0 ? r + two_pi : r;
}

/**
 * @brief Line through two points, slope-intercept form.
 *
 * m = (y1 - y2) / (x1 - x2), z = y2 - m * x2.
 *
 * @throws VerticalLineError when |x1 - x2| < 1e-12 * max(1, |x1|).
 */
inline SlopeLine line_through(const Point2& p1, const Point2& p2) {
    const double dx = p1.x() - p2.x();
    if (std::abs(dx) < 1e-12 * std::max(1.0, std::abs(p1.x()))) {
        throw VerticalLineError("line_through: points share an abscissa (vertical line)");
    }
    const double m = (p1.y() - p2.y()) / dx;
    return SlopeLine{m, p2.y() - m * p2.x()};
}

/**
 * @brief Perpendicular bisector of the segment tx-rx, slope-intercept form.
 *
 * For the base line y = m x + z this is y = m_p x + z_p with m_p = -1/m and
 * z_p = (x_tx + x_rx) / (2 m) + (y_tx + y_rx) / 2, so the midpoint of tx-rx
 * lies on it.
 *
 * @throws DegenerateSlopeError when tx-rx is vertical or horizontal (m = 0);
 *         callers rotate the scene first (see analytic::usable_frame).
 */
inline SlopeLine mid_perpendicular(const Point2& tx, const Point2& rx) {
    SlopeLine base;
    try {
        base = line_through(tx, rx);
    } catch (const VerticalLineError&) {
        throw DegenerateSlopeError("mid_perpendicular: tx-rx line is vertical");
    }
    if (std::abs(base.m) < 1e-12) {
        throw DegenerateSlopeError("mid_perpendicular: tx-rx line is horizontal (m = 0)");
    }
    const double mp = -1.0 / base.m;
    const double zp = (tx.x() + rx.x()) / (2.0 * base.m) + (tx.y() + rx.y()) / 2.0;
    return SlopeLine{mp, zp};
}

/**
 * @brief Construct the random segment from its sampling parameters.
 *
 * The center sits at distance p = r_net * sqrt(u) from the origin in
 * direction alpha; the segment is perpendicular to that radius:
 *
 *   center = (p cos(alpha), p sin(alpha))
 *   end1   = center + (length/2) * (-sin(alpha),  cos(alpha))
 *   end2   = center + (length/2) * ( sin(alpha), -cos(alpha))
 *
 * Both endpoints satisfy x cos(alpha) + y sin(alpha) = p.
 *
 * @throws InvalidParameterError on u outside [0,1] or non-positive
 *         length / r_net.
 */
inline SegmentObject object_from_params(double u, double alpha, double length, double r_net) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw InvalidParameterError("object_from_params: u must lie in [0, 1]");
    }
    if (!(length > 0.0) || !(r_net > 0.0)) {
        throw InvalidParameterError("object_from_params: length and r_net must be positive");
    }
    const double p = r_net * std::sqrt(u);
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    SegmentObject obj;
    obj.center = Point2{p * ca, p * sa};
    obj.alpha = alpha;
    obj.length = length;
    const double hx = 0.5 * length * sa;
    const double hy = 0.5 * length * ca;
    obj.end1 = Point2{obj.center.x() - hx, obj.center.y() + hy};
    obj.end2 = Point2{obj.center.x() + hx, obj.center.y() - hy};
    return obj;
}

/// Infinite line carrying the segment, in polar form (p = |center|, alpha).
inline PolarLine supporting_line(const SegmentObject& obj) {
    return PolarLine{obj.center.norm(), wrap_angle(obj.alpha)};
}

/// a x + b y + c = 0 form of y = m x + z  (a = m, b = -1, c = z).
inline GeneralLine general_form(const SlopeLine& line) {
    return GeneralLine{line.m, -1.0, line.z};
}

/// a x + b y + c = 0 form of x cos(alpha) + y sin(alpha) = p.
inline GeneralLine general_form(const PolarLine& line) {
    return GeneralLine{std::cos(line.alpha), std::sin(line.alpha), -line.p};
}

/**
 * @brief Classify a point against a non-vertical general line.
 *
 * Above iff (a x + b y + c) / b > 0, Below iff < 0; On when the residual
 * a x + b y + c is zero within 1e-12 relative to the evaluation scale.
 *
 * @pre line.b != 0 (vertical general lines have no above/below).
 */
inline SideClassification side_of(const GeneralLine& line, const Point2& pt) {
    if (line.b == 0.0) {
        throw InvalidParameterError("side_of: vertical line (b = 0) has no above/below");
    }
    const double ax = line.a * pt.x();
    const double by = line.b * pt.y();
    const double val = ax + by + line.c;
    const double scale = std::max(1.0, std::abs(ax) + std::abs(by) + std::abs(line.c));
    if (std::abs(val) <= 1e-12 * scale) return SideClassification::On;
    return (val / line.b > 0.0) ? SideClassification::Above : SideClassification::Below;
}

/// True iff tx and rx lie strictly on the same side of the polar line.
/// A point exactly on the line counts as not-same-side (measure zero).
inline bool same_side(const Point2& tx, const Point2& rx, const PolarLine& line) {
    return polar_offset(line, tx) * polar_offset(line, rx) > 0.0;
}

/// Intersection of y = m x + z with x cos(alpha) + y sin(alpha) = p, or
/// nothing when the lines are parallel (|m sin(alpha) + cos(alpha)| <= 1e-12).
inline std::optional<Point2> try_intersect_slope_polar(const SlopeLine& line,
                                                       const PolarLine& obj_line) {
    const double sa = std::sin(obj_line.alpha);
    const double ca = std::cos(obj_line.alpha);
    const double denom = line.m * sa + ca;
    if (std::abs(denom) <= 1e-12) return std::nullopt;
    const double x = (obj_line.p - line.z * sa) / denom;
    return Point2{x, line.m * x + line.z};
}

/// Throwing variant of try_intersect_slope_polar.
/// @throws ParallelLinesError when the denominator m sin(alpha) + cos(alpha) vanishes.
inline Point2 intersect_slope_polar(const SlopeLine& line, const PolarLine& obj_line) {
    auto pt = try_intersect_slope_polar(line, obj_line);
    if (!pt) {
        throw ParallelLinesError("intersect_slope_polar: lines are parallel");
    }
    return *pt;
}

/// Closed axis-aligned box test: min(c1,c2) <= pt <= max(c1,c2) componentwise.
inline bool within_bbox(const Point2& pt, const Point2& c1, const Point2& c2) {
    return std::min(c1.x(), c2.x()) <= pt.x() && pt.x() <= std::max(c1.x(), c2.x()) &&
           std::min(c1.y(), c2.y()) <= pt.y() && pt.y() <= std::max(c1.y(), c2.y());
}

} // namespace reflectprob::geometry
