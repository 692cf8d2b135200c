#pragma once

#include <array>
#include <cmath>
#include <string_view>

namespace celestial {

using Vec2 = std::array<double, 2>;

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }
/// Rotation by +pi/2.
inline Vec2 perp(const Vec2& a) { return {-a[1], a[0]}; }

/// A point (q, p) of T*(R^2 minus the origin).
struct PhaseState {
    double q1 = 0.0;
    double q2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;

    Vec2 q() const { return {q1, q2}; }
    Vec2 p() const { return {p1, p2}; }
    std::array<double, 4> as_array() const { return {q1, q2, p1, p2}; }
    static PhaseState from_array(const std::array<double, 4>& x) { return {x[0], x[1], x[2], x[3]}; }
};

enum class ProblemKind { Kepler, RotatingKepler, HillLunar };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view name);

/// Kepler energy and the rotating-frame coupling term, with energy + coupling = H_R.
struct KeplerIntegrals {
    double energy;
    double angular_momentum;
};

inline constexpr double kCollisionRadius = 1e-12;

double eval_hamiltonian(ProblemKind kind, const PhaseState& s);
std::array<double, 4> vector_field(ProblemKind kind, const PhaseState& s);
KeplerIntegrals kepler_integrals(const PhaseState& s);

/// Positive critical constant: 3/2 for the rotating Kepler problem, 3^(4/3)/2 for Hill.
double critical_value(ProblemKind kind);
/// Throws DomainError unless c is at or above the critical value of kind.
void require_at_or_above_critical(ProblemKind kind, double c, const char* where);

/// 1/|q| + |q|^2/2 for the rotating Kepler problem, 1/|q| + 3 q1^2/2 for Hill.
double effective_potential(ProblemKind kind, const Vec2& q);

/// Radius of the bounded Hill component around the origin at energy -c.
double hill_region_extent(ProblemKind kind, double c);

enum class RegionTest { Open, Closed };

/// Membership in the bounded component of the Hill region at energy -c.
bool hill_region_contains(ProblemKind kind, double c, const Vec2& q, RegionTest test = RegionTest::Closed);

}  // namespace celestial
