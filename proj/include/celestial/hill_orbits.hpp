#pragma once

#include <utility>
#include <vector>

#include "celestial/capacity.hpp"
#include "celestial/hamiltonians.hpp"
#include "celestial/rkp_spectrum.hpp"

namespace celestial {

struct TrajectoryNode {
    double t = 0.0;
    PhaseState s;
};

/// Accepted steps of an adaptive integration. state_at re-steps from the nearest node,
/// so dense values carry the same local accuracy as the nodes.
class Trajectory {
public:
    Trajectory(ProblemKind kind, double tol, std::vector<TrajectoryNode> nodes, double energy_drift);

    ProblemKind kind() const { return kind_; }
    double tolerance() const { return tol_; }
    const std::vector<TrajectoryNode>& nodes() const { return nodes_; }
    double t_end() const { return nodes_.back().t; }
    double energy_drift() const { return energy_drift_; }
    PhaseState state_at(double t) const;

private:
    ProblemKind kind_;
    double tol_;
    std::vector<TrajectoryNode> nodes_;
    double energy_drift_;
};

inline constexpr double kCollisionAbortRadius = 1e-6;

Trajectory integrate(ProblemKind kind, const PhaseState& s0, double t_end, double tol);

struct Crossing {
    double t = 0.0;
    PhaseState s;
};

/// First crossing of q2 = 0 after t = 0 in the given direction (+1 upward, -1 downward).
Crossing next_section_crossing(ProblemKind kind, const PhaseState& s0, int direction, double t_max, double tol);

struct ShootingConfig {
    OrbitFamily family = OrbitFamily::Retrograde;
    double c = 2.0;
    std::pair<double, double> q1_bracket{0.0, 0.0};
    double integrator_tol = 1e-12;
    int max_newton_iters = 60;
};

ShootingConfig default_shooting_config(ProblemKind kind, OrbitFamily family, double c);

/// Momentum p2 on the energy level -c for the state (q1, 0, 0, p2).
double symmetric_momentum(ProblemKind kind, OrbitFamily family, double c, double q1);

struct PeriodicOrbit {
    ProblemKind kind = ProblemKind::RotatingKepler;
    OrbitFamily family = OrbitFamily::Retrograde;
    double c = 0.0;
    PhaseState initial;
    double period = 0.0;
    double action = 0.0;
    double energy_drift = 0.0;
    double crossing_residual = 0.0;
    double closure_error = 0.0;
    double action_form_gap = 0.0;
    double integrator_tol = 1e-12;
    std::vector<TrajectoryNode> samples;
};

PeriodicOrbit find_symmetric_orbit(ProblemKind kind, const ShootingConfig& cfg);

struct ActionIntegrals {
    double p_dq = 0.0;
    double minus_q_dp = 0.0;
    double closure_error = 0.0;
};

ActionIntegrals orbit_action_integrals(const PeriodicOrbit& orbit);
/// Loop integral of p dq over one period; both one-forms must agree to 1e-9.
double orbit_action(const PeriodicOrbit& orbit);

struct ConjectureReport {
    double c = 0.0;
    OrbitFamily family = OrbitFamily::Retrograde;
    double action = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool inside = false;
    PeriodicOrbit orbit;
};

ConjectureReport conjecture_check(double c, OrbitFamily family);

}  // namespace celestial
