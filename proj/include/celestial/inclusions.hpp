#pragma once

#include <array>
#include <cstddef>
#include <functional>

#include "celestial/hamiltonians.hpp"

namespace celestial {

/// The bounded domain enclosed by the regularized energy hypersurface of kind at -c.
struct DomainSpec {
    ProblemKind kind = ProblemKind::RotatingKepler;
    double c = 2.0;
};

struct SweepGrid {
    int n_p = 64;       ///< rings in |p| <= p_max and angles per ring
    int n_theta = 256;  ///< fiber directions
    double p_max = 12.0;
};

inline constexpr double kTangencyTolerance = 1e-9;

struct InclusionReport {
    bool holds = false;
    double worst_margin = 0.0;
    double kappa_min = 0.0;
    double kappa_max = 0.0;
    std::size_t p_samples = 0;
    std::size_t theta_samples = 0;
    std::size_t criteria_disagreements = 0;
    Vec2 worst_p{};
    double worst_theta = 0.0;
    /// Smallest margin on each of the three outermost |p| rings, innermost first.
    std::array<double, 3> outer_ring_margins{};
};

using FiberRadiusFn = std::function<double(const Vec2& p, double theta)>;
/// Signed residual that is non-positive exactly on the outer sublevel, evaluated at (q, p).
using SublevelResidualFn = std::function<double(const Vec2& q, const Vec2& p)>;

struct FiberPair {
    FiberRadiusFn inner;
    FiberRadiusFn outer;
    SublevelResidualFn outer_residual;  ///< optional
};

InclusionReport compare_fibers(const FiberPair& pair, const SweepGrid& grid, double tolerance = kTangencyTolerance);
/// Single-threaded reference for compare_fibers.
InclusionReport compare_fibers_serial(const FiberPair& pair, const SweepGrid& grid,
                                      double tolerance = kTangencyTolerance);

InclusionReport verify_fiber_inclusion(const DomainSpec& inner, const DomainSpec& outer, int n_p, int n_theta,
                                       double p_max, double tolerance = kTangencyTolerance);

double threshold_c_H(int P);
double outer_rkp_level(double c);
double inner_rkp_level(double c);
int select_cover_order(double c);

/// |qbar^2 - (c_H^P - c_R^P)| for the tangency abscissa qbar of the P-th cover.
double tangency_identity_residual(int P);

/// Samples the inner rotating Kepler hypersurface of Hill level c and checks |q| <= 1/c + 1e-12.
bool inner_level_radius_bound_holds(double c, int n_samples);

}  // namespace celestial
