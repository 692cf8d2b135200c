#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace celestial::detail {

/// Smaller positive root of x^3 + p x + q = 0 for p < 0 < q with three real roots.
/// The arccos argument is clamped so the double-root boundary stays finite.
inline double smaller_positive_root_depressed(double p, double q) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = (3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    double x = m * std::cos(phi - 2.0 * std::numbers::pi / 3.0);
    const double f = (x * x + p) * x + q;
    const double df = 3.0 * x * x + p;
    if (std::abs(df) > 1e-8 * std::abs(p)) x -= f / df;
    return x;
}

}  // namespace celestial::detail
