#pragma once

#include <array>
#include <utility>

#include "celestial/hamiltonians.hpp"

namespace celestial {

/// Point on the unit sphere in R^3.
struct SpherePoint {
    double x = 0.0;
    double y = 0.0;
    double z = -1.0;
};

/// Covector on the sphere, stored as an ambient vector orthogonal to the base point.
struct CotangentSpherePoint {
    SpherePoint base;
    std::array<double, 3> eta{};
};

/// Direction u_theta = (cos theta, sin theta) in the fiber over momentum p.
struct FiberRay {
    Vec2 p{};
    double theta = 0.0;

    static FiberRay make(const Vec2& p, double theta);
};

SpherePoint stereographic(const Vec2& x);
Vec2 stereographic_inv(const SpherePoint& s);

std::pair<Vec2, Vec2> switch_map(const Vec2& x, const Vec2& y);

CotangentSpherePoint cotangent_lift(const Vec2& x, const Vec2& y);

/// |q| (H_KP + c) = (|p|^2 + 2c)|q|/2 - 1.
double shifted_kepler(double c, const PhaseState& s);

/// Finsler dual whose level one is the bounded component of H_R = -c.
double finsler_dual_rkp(double c, const Vec2& q, const Vec2& p);

/// Radius of the bounded fiber curve over ray.p in direction ray.theta.
double radial_fiber_point(ProblemKind kind, double c, const FiberRay& ray);

inline constexpr double kFinslerMargin = 1e-9;

}  // namespace celestial
