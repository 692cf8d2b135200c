#include "celestial/moser.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "celestial/errors.hpp"

namespace celestial {

namespace {

void require_rkp_level(double c, const char* where) {
    if (!std::isfinite(c) || c < 1.5 + kFinslerMargin)
        throw DomainError(std::string(where) + ": needs c >= 3/2 + 1e-9");
}

double rkp_fiber_radius(double c, const Vec2& p, double theta) {
    const double s = dot(p, p) + 2.0 * c;
    const double w = dot(perp(p), Vec2{std::cos(theta), std::sin(theta)});
    const double disc = s * s + 16.0 * w;
    if (disc < 0.0) throw DomainError("radial_fiber_point: negative discriminant");
    return 4.0 / (s + std::sqrt(disc));
}

double hill_cubic(double a, double b, double d, double r) { return ((a * r + b) * r + d) * r - 1.0; }

double bisect_then_newton(double a, double b, double d, double lo, double hi) {
    double flo = hill_cubic(a, b, d, lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = hill_cubic(a, b, d, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double r = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
        const double df = (3.0 * a * r + 2.0 * b) * r + d;
        if (std::abs(df) < 1e-12) break;
        const double step = hill_cubic(a, b, d, r) / df;
        if (!(r - step > 0.0)) break;
        r -= step;
    }
    return r;
}

double hill_fiber_radius(double c, const Vec2& p, double theta) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double a = 0.5 * st * st - ct * ct;
    const double b = p[0] * st - p[1] * ct;
    const double d = 0.5 * dot(p, p) + c;
    const double top = 1.05 * hill_region_extent(ProblemKind::HillLunar, c);

    // Split (0, top] at the critical points of the cubic so each piece is monotone.
    double cuts[4] = {0.0, top, top, top};
    int n = 1;
    const double qa = 3.0 * a, qb = 2.0 * b, qc = d;
    if (std::abs(qa) > 1e-300) {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc > 0.0) {
            const double sq = std::sqrt(disc);
            double r1 = (-qb - sq) / (2.0 * qa);
            double r2 = (-qb + sq) / (2.0 * qa);
            if (r1 > r2) std::swap(r1, r2);
            for (double r : {r1, r2})
                if (r > 0.0 && r < top) cuts[n++] = r;
        }
    } else if (std::abs(qb) > 0.0) {
        const double r = -qc / qb;
        if (r > 0.0 && r < top) cuts[n++] = r;
    }
    cuts[n++] = top;
    double lo = cuts[0];
    double flo = -1.0;
    for (int i = 1; i < n; ++i) {
        const double hi = cuts[i];
        const double fhi = hill_cubic(a, b, d, hi);
        if (flo < 0.0 && fhi >= 0.0) return bisect_then_newton(a, b, d, lo, hi);
        if (flo < 0.0 && fhi > -1e-13 && i + 1 < n) return hi;  // tangency at a critical point
        lo = hi;
        flo = fhi;
    }
    throw NumericalError("radial_fiber_point: no positive root in the bounded range");
}

}  // namespace

FiberRay FiberRay::make(const Vec2& p, double theta) {
    double t = std::fmod(theta, 2.0 * std::numbers::pi);
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    if (t >= 2.0 * std::numbers::pi) t = 0.0;
    return {p, t};
}

SpherePoint stereographic(const Vec2& x) {
    const double n2 = dot(x, x);
    const double den = n2 + 1.0;
    return {2.0 * x[0] / den, 2.0 * x[1] / den, (n2 - 1.0) / den};
}

Vec2 stereographic_inv(const SpherePoint& s) {
    const double den = 1.0 - s.z;
    if (!(den > 0.0)) throw DomainError("stereographic_inv: the north pole has no preimage");
    return {s.x / den, s.y / den};
}

std::pair<Vec2, Vec2> switch_map(const Vec2& x, const Vec2& y) { return {y, {-x[0], -x[1]}}; }

CotangentSpherePoint cotangent_lift(const Vec2& x, const Vec2& y) {
    const double n2 = dot(x, x);
    const double den = n2 + 1.0;
    const double den2 = den * den;
    // Columns of D(phi) at x.
    const std::array<double, 3> d1{2.0 * (den - 2.0 * x[0] * x[0]) / den2, -4.0 * x[0] * x[1] / den2,
                                   4.0 * x[0] / den2};
    const std::array<double, 3> d2{-4.0 * x[0] * x[1] / den2, 2.0 * (den - 2.0 * x[1] * x[1]) / den2,
                                   4.0 * x[1] / den2};
    const double scale = den2 / 4.0;
    CotangentSpherePoint out;
    out.base = stereographic(x);
    for (int i = 0; i < 3; ++i) out.eta[i] = scale * (d1[i] * y[0] + d2[i] * y[1]);
    return out;
}

double shifted_kepler(double c, const PhaseState& s) {
    const double r = norm(s.q());
    if (!(r >= kCollisionRadius)) throw DomainError("shifted_kepler: collision state |q| < 1e-12");
    return 0.5 * (dot(s.p(), s.p()) + 2.0 * c) * r - 1.0;
}

double finsler_dual_rkp(double c, const Vec2& q, const Vec2& p) {
    require_rkp_level(c, "finsler_dual_rkp");
    const double r = norm(q);
    if (!(r >= kCollisionRadius)) throw DomainError("finsler_dual_rkp: collision state |q| < 1e-12");
    const double s = dot(p, p) + 2.0 * c;
    const double disc = 1.0 + 16.0 * dot(perp(p), q) / (r * s * s);
    if (disc < 0.0) throw DomainError("finsler_dual_rkp: negative discriminant");
    return 0.25 * s * r * (1.0 + std::sqrt(disc));
}

double radial_fiber_point(ProblemKind kind, double c, const FiberRay& ray) {
    switch (kind) {
        case ProblemKind::Kepler:
            require_at_or_above_critical(kind, c, "radial_fiber_point");
            return 2.0 / (dot(ray.p, ray.p) + 2.0 * c);
        case ProblemKind::RotatingKepler:
            require_rkp_level(c, "radial_fiber_point");
            return rkp_fiber_radius(c, ray.p, ray.theta);
        case ProblemKind::HillLunar:
            require_at_or_above_critical(kind, c, "radial_fiber_point");
            return hill_fiber_radius(c, ray.p, ray.theta);
    }
    throw ArgumentError("radial_fiber_point: unknown kind");
}

}  // namespace celestial
