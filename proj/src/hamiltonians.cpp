#include "celestial/hamiltonians.hpp"

#include <cmath>
#include <string>

#include "celestial/errors.hpp"
#include "cubic.hpp"

namespace celestial {

namespace {

double guarded_radius(const Vec2& q, const char* where) {
    const double r = norm(q);
    if (!(r >= kCollisionRadius))
        throw DomainError(std::string(where) + ": collision state |q| < 1e-12");
    return r;
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::Kepler: return "kepler";
        case ProblemKind::RotatingKepler: return "rkp";
        case ProblemKind::HillLunar: return "hill";
    }
    return "unknown";
}

ProblemKind parse_problem_kind(std::string_view name) {
    if (name == "kepler") return ProblemKind::Kepler;
    if (name == "rkp" || name == "rotating-kepler") return ProblemKind::RotatingKepler;
    if (name == "hill" || name == "hill-lunar") return ProblemKind::HillLunar;
    throw ArgumentError("unknown problem kind '" + std::string(name) + "'");
}

double eval_hamiltonian(ProblemKind kind, const PhaseState& s) {
    const double r = guarded_radius(s.q(), "eval_hamiltonian");
    double h = 0.5 * (s.p1 * s.p1 + s.p2 * s.p2) - 1.0 / r;
    if (kind == ProblemKind::Kepler) return h;
    h += s.p1 * s.q2 - s.p2 * s.q1;
    if (kind == ProblemKind::HillLunar) h += -s.q1 * s.q1 + 0.5 * s.q2 * s.q2;
    return h;
}

std::array<double, 4> vector_field(ProblemKind kind, const PhaseState& s) {
    const double r = guarded_radius(s.q(), "vector_field");
    const double r3 = r * r * r;
    std::array<double, 4> v{s.p1, s.p2, -s.q1 / r3, -s.q2 / r3};
    if (kind == ProblemKind::Kepler) return v;
    v[0] += s.q2;
    v[1] -= s.q1;
    v[2] += s.p2;
    v[3] -= s.p1;
    if (kind == ProblemKind::HillLunar) {
        v[2] += 2.0 * s.q1;
        v[3] -= s.q2;
    }
    return v;
}

KeplerIntegrals kepler_integrals(const PhaseState& s) {
    const double r = guarded_radius(s.q(), "kepler_integrals");
    return {0.5 * (s.p1 * s.p1 + s.p2 * s.p2) - 1.0 / r, s.p1 * s.q2 - s.p2 * s.q1};
}

double critical_value(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::RotatingKepler: return 1.5;
        case ProblemKind::HillLunar: return 1.5 * std::cbrt(3.0);
        case ProblemKind::Kepler: break;
    }
    throw ArgumentError("critical_value: the Kepler problem has no critical value");
}

void require_at_or_above_critical(ProblemKind kind, double c, const char* where) {
    if (!std::isfinite(c)) throw ArgumentError(std::string(where) + ": c must be finite");
    if (kind == ProblemKind::Kepler) {
        if (!(c > 0.0)) throw DomainError(std::string(where) + ": Kepler energy level needs c > 0");
        return;
    }
    if (c < critical_value(kind))
        throw DomainError(std::string(where) + ": c is below the critical value of " + std::string(to_string(kind)));
}

double effective_potential(ProblemKind kind, const Vec2& q) {
    const double r = guarded_radius(q, "effective_potential");
    switch (kind) {
        case ProblemKind::Kepler: return 1.0 / r;
        case ProblemKind::RotatingKepler: return 1.0 / r + 0.5 * r * r;
        case ProblemKind::HillLunar: return 1.0 / r + 1.5 * q[0] * q[0];
    }
    return 1.0 / r;
}

double hill_region_extent(ProblemKind kind, double c) {
    require_at_or_above_critical(kind, c, "hill_region_extent");
    switch (kind) {
        case ProblemKind::Kepler: return 1.0 / c;
        case ProblemKind::RotatingKepler: return detail::smaller_positive_root_depressed(-2.0 * c, 2.0);
        case ProblemKind::HillLunar: return detail::smaller_positive_root_depressed(-2.0 * c / 3.0, 2.0 / 3.0);
    }
    return 0.0;
}

bool hill_region_contains(ProblemKind kind, double c, const Vec2& q, RegionTest test) {
    require_at_or_above_critical(kind, c, "hill_region_contains");
    const double v = effective_potential(kind, q);
    if (test == RegionTest::Closed)
        return v >= c * (1.0 - 1e-12) && norm(q) <= hill_region_extent(kind, c) * (1.0 + 1e-12);
    switch (kind) {
        case ProblemKind::Kepler: return v > c;
        case ProblemKind::RotatingKepler: return v > c && norm(q) < 1.0;
        case ProblemKind::HillLunar: {
            const double a = 1.0 / std::cbrt(3.0);
            return v > c && std::abs(q[0]) < a && std::abs(q[1]) < 2.0 * a / 3.0;
        }
    }
    return false;
}

}  // namespace celestial
