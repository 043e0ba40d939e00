#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "famheight/exactalg/bigrat.hpp"

namespace famheight {

enum class HeightMode { rigorous, heuristic };

inline std::string to_string(HeightMode m) { return m == HeightMode::rigorous ? "rigorous" : "heuristic"; }

/// Requested stopping behaviour of the canonical-height iterations.
enum class StopRule {
    automatic,  // rigorous bound or extrapolated tail, whichever is met first
    rigorous,   // certificate-backed bound only
    heuristic,  // same as automatic; kept for command-line symmetry
};

/// A height estimate with an error radius. `exact` is set when the value is known as a rational.
struct HeightValue {
    double value = 0;
    double radius = 0;
    HeightMode mode = HeightMode::rigorous;
    bool converged = true;
    unsigned iterations = 0;
    std::vector<double> sequence;
    std::optional<BigRat> exact;
};

namespace detail {

// Relative slack for one double-precision log evaluation plus a handful of operations.
inline double rounding_radius(double v) { return 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(v)); }

// Geometric tail estimate from the last three increments of a_0, a_1, ...
// The ratio is never taken below 1/d: increments of d^-n h(f^n x) decay at least that fast
// in the worst case, so a faster observed decay is not trusted. Returns nothing while
// fewer than three increments exist or the ratio estimate is >= 1.
inline std::optional<double> tail_radius(const std::vector<double>& a, double d) {
    const std::size_t n = a.size();
    if (n < 4) return std::nullopt;
    const double d1 = std::fabs(a[n - 1] - a[n - 2]);
    const double d2 = std::fabs(a[n - 2] - a[n - 3]);
    const double d3 = std::fabs(a[n - 3] - a[n - 4]);
    auto ratio = [](double num, double den) {
        if (num == 0) return 0.0;
        if (den == 0) return std::numeric_limits<double>::infinity();
        return num / den;
    };
    double r = std::max({ratio(d1, d2), ratio(d2, d3), 1.0 / d});
    if (!(r < 1)) return std::nullopt;
    // envelope of the recent increments, projected to the current step
    const double env = std::max({d1, d2 * r, d3 * r * r});
    return 2 * env * r / (1 - r);
}

}  // namespace detail

}  // namespace famheight
