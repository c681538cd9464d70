// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file quadrature.hpp
 * @brief Globally adaptive Gauss-Kronrod (7-15) integration with breakpoints.
 *
 * The integrands in this project are piecewise smooth with known switch
 * points (Heaviside gates, case boundaries). The domain is split at the
 * supplied breakpoints first, then panels are bisected worst-error-first
 * until the summed error estimate meets max(abs_tol, rel_tol * |result|).
 * Gauss-Kronrod nodes are strictly interior, so the integrand is never
 * evaluated at a panel boundary (hence never exactly at a breakpoint).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "reflectprob/errors.hpp"

namespace reflectprob::analytic {

/// Tolerances and subdivision limits for adaptive integration.
struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_depth = 60;
    /// Known switch points of the integrand; the domain is subdivided here
    /// first. Points outside (lo, hi) are ignored.
    std::vector<double> breakpoints;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
inline constexpr std::array<double, 8> kGkNodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct PanelEstimate {
    double value;
    double error;
};

template <class F>
PanelEstimate gk15(F& fn, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double kronrod = kKronrodWeights[7] * fn(mid);
    double gauss = kGaussWeights[3] * fn(mid);
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kGkNodes[i];
        const double fsum = fn(mid - dx) + fn(mid + dx);
        kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return PanelEstimate{kronrod, std::abs(kronrod - gauss)};
}

struct Panel {
    double a, b, value, error;
    int depth;
    bool operator<(const Panel& o) const { return error < o.error; }
};

} // namespace detail

/**
 * @brief Integrate fn over [lo, hi] to max(abs_tol, rel_tol * |result|).
 *
 * @throws InvalidParameterError on an empty/inverted interval or bad spec.
 * @throws QuadratureFailureError when the tolerance is still unmet once
 *         every refinable panel has reached spec.max_depth.
 */
template <class F>
double integrate(F&& fn, double lo, double hi, const QuadratureSpec& spec) {
    if (!(lo < hi)) throw InvalidParameterError("integrate: requires lo < hi");
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) || spec.max_depth < 1) {
        throw InvalidParameterError("integrate: tolerances must be positive, max_depth >= 1");
    }

    // Initial panels: [lo, hi] split at the interior breakpoints.
    std::vector<double> cuts;
    cuts.push_back(lo);
    for (double b : spec.breakpoints) {
        if (b > lo && b < hi) cuts.push_back(b);
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    const double min_width = 16.0 * std::numeric_limits<double>::epsilon() *
                             std::max({1.0, std::abs(lo), std::abs(hi)});

    std::priority_queue<detail::Panel> panels;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] <= min_width) continue; // merged duplicate breakpoints
        auto est = detail::gk15(fn, cuts[i], cuts[i + 1]);
        panels.push(detail::Panel{cuts[i], cuts[i + 1], est.value, est.error, 0});
        total += est.value;
        total_err += est.error;
    }

    // Refine the worst panel until the summed error estimate meets the
    // tolerance. Panels that reach max_depth are set aside but keep charging
    // their error, so failure is only declared once nothing refinable is left.
    double stuck_err = 0.0;
    while (true) {
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (total_err <= tol) return total;
        if (panels.empty()) {
            if (stuck_err <= tol) return total;
            throw QuadratureFailureError("integrate: tolerance not met at max_depth");
        }

        detail::Panel worst = panels.top();
        panels.pop();
        // A panel too narrow to split contributes at most ~|f| * width; keep
        // its value and stop charging its error against the budget.
        if (worst.b - worst.a <= min_width) {
            total_err -= worst.error;
            continue;
        }
        if (worst.depth >= spec.max_depth) {
            stuck_err += worst.error;
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gk15(fn, worst.a, mid);
        auto right = detail::gk15(fn, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(detail::Panel{worst.a, mid, left.value, left.error, worst.depth + 1});
        panels.push(detail::Panel{mid, worst.b, right.value, right.error, worst.depth + 1});
    }
}

} // namespace reflectprob::analytic
