#include "celestial/hill_orbits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "celestial/errors.hpp"

namespace celestial {

namespace odeint = boost::numeric::odeint;

namespace {

using State4 = std::array<double, 4>;
using State6 = std::array<double, 6>;

constexpr long kMaxSteps = 5'000'000;

struct Field {
    ProblemKind kind;
    void operator()(const State4& x, State4& dx, double /*t*/) const {
        dx = vector_field(kind, PhaseState::from_array(x));
    }
};

/// Flow augmented with the integrands p.qdot and -q.pdot.
struct ActionField {
    ProblemKind kind;
    void operator()(const State6& x, State6& dx, double /*t*/) const {
        const PhaseState s{x[0], x[1], x[2], x[3]};
        const auto v = vector_field(kind, s);
        for (int i = 0; i < 4; ++i) dx[i] = v[i];
        dx[4] = s.p1 * v[0] + s.p2 * v[1];
        dx[5] = -(s.q1 * v[2] + s.q2 * v[3]);
    }
};

void check_tolerance(double tol, const char* where) {
    if (!(tol >= 1e-14 && tol <= 1e-6)) throw ArgumentError(std::string(where) + ": tolerance must lie in [1e-14, 1e-6]");
}

double radius(const State4& x) { return std::hypot(x[0], x[1]); }
double radius(const State6& x) { return std::hypot(x[0], x[1]); }

/// Runs the controlled RKF78 stepper from t = 0 to t_end. visit(t0, x0, t1, x1) is called after
/// every accepted step and stops the run by returning true.
template <class State, class System, class Visit>
void drive(const System& sys, State x, double t_end, double tol, Visit&& visit) {
    auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(tol, tol);
    double t = 0.0;
    double dt = std::min(1e-2, t_end);
    for (long n = 0; t < t_end; ++n) {
        if (n > kMaxSteps) throw NumericalError("integrate: step budget exhausted");
        const State x0 = x;
        const double t0 = t;
        dt = std::min(dt, t_end - t);
        const bool last = dt == t_end - t;
        if (stepper.try_step(sys, x, t, dt) != odeint::success) {
            if (dt < 1e-15 * std::max(1.0, std::abs(t))) throw NumericalError("integrate: step size underflow");
            continue;
        }
        if (last) t = t_end;
        if (radius(x) < kCollisionAbortRadius) throw CollisionError("integrate: collision abort", t);
        if (visit(t0, x0, t, x)) return;
    }
}

template <class State, class System>
State single_step(const System& sys, const State& x0, double t0, double h) {
    if (h == 0.0) return x0;
    odeint::runge_kutta_fehlberg78<State> rk;
    State out;
    rk.do_step(sys, x0, t0, out, h);
    return out;
}

}  // namespace

Trajectory::Trajectory(ProblemKind kind, double tol, std::vector<TrajectoryNode> nodes, double energy_drift)
    : kind_(kind), tol_(tol), nodes_(std::move(nodes)), energy_drift_(energy_drift) {
    if (nodes_.empty()) throw ArgumentError("Trajectory: no nodes");
}

PhaseState Trajectory::state_at(double t) const {
    if (t < nodes_.front().t || t > nodes_.back().t) throw ArgumentError("Trajectory::state_at: time outside the run");
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                               [](double v, const TrajectoryNode& n) { return v < n.t; });
    const auto& node = *std::prev(it);
    const auto x = single_step(Field{kind_}, node.s.as_array(), node.t, t - node.t);
    return PhaseState::from_array(x);
}

Trajectory integrate(ProblemKind kind, const PhaseState& s0, double t_end, double tol) {
    check_tolerance(tol, "integrate");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ArgumentError("integrate: t_end must be positive");
    if (norm(s0.q()) < kCollisionAbortRadius) throw CollisionError("integrate: initial state at collision", 0.0);
    const double h0 = eval_hamiltonian(kind, s0);
    std::vector<TrajectoryNode> nodes{{0.0, s0}};
    double drift = 0.0;
    drive(Field{kind}, s0.as_array(), t_end, tol, [&](double, const State4&, double t, const State4& x) {
        const auto s = PhaseState::from_array(x);
        nodes.push_back({t, s});
        drift = std::max(drift, std::abs(eval_hamiltonian(kind, s) - h0));
        return false;
    });
    return Trajectory(kind, tol, std::move(nodes), drift);
}

Crossing next_section_crossing(ProblemKind kind, const PhaseState& s0, int direction, double t_max, double tol) {
    check_tolerance(tol, "next_section_crossing");
    const Field sys{kind};
    std::optional<Crossing> hit;
    drive(sys, s0.as_array(), t_max, tol, [&](double t0, const State4& x0, double t1, const State4& x1) {
        const bool crossed = direction > 0 ? (x0[1] < 0.0 && x1[1] >= 0.0) : (x0[1] > 0.0 && x1[1] <= 0.0);
        if (!crossed) return false;
        auto q2 = [&](double tau) { return single_step(sys, x0, t0, tau)[1]; };
        const double h = t1 - t0;
        double tau = h;
        if (x1[1] != 0.0) {
            std::uintmax_t iters = 200;
            const auto r = boost::math::tools::toms748_solve(
                q2, 0.0, h, x0[1], x1[1], [](double a, double b) { return std::abs(b - a) <= 1e-16; }, iters);
            tau = 0.5 * (r.first + r.second);
        }
        hit = Crossing{t0 + tau, PhaseState::from_array(single_step(sys, x0, t0, tau))};
        return true;
    });
    if (!hit) throw NumericalError("next_section_crossing: no section crossing before t_max");
    return *hit;
}

double symmetric_momentum(ProblemKind kind, OrbitFamily family, double c, double q1) {
    if (!(q1 > 0.0)) throw DomainError("symmetric_momentum: q1 must be positive");
    const double disc = 2.0 * (effective_potential(kind, {q1, 0.0}) - c);
    if (disc < 0.0) throw DomainError("symmetric_momentum: q1 lies outside the Hill region");
    const double root = std::sqrt(disc);
    return family == OrbitFamily::Retrograde ? q1 - root : q1 + root;
}

ShootingConfig default_shooting_config(ProblemKind kind, OrbitFamily family, double c) {
    const double ext = hill_region_extent(kind, c);
    ShootingConfig cfg;
    cfg.family = family;
    cfg.c = c;
    if (family == OrbitFamily::Retrograde) {
        cfg.q1_bracket = {0.3 * ext, 0.95 * ext};
    } else {
        const double seed = std::pow(circular_roots(std::max(c, 1.5)).L_D, 2);
        cfg.q1_bracket = {std::min(0.7 * seed, 0.5 * ext), std::min(1.3 * seed, 0.999 * ext)};
    }
    return cfg;
}

namespace {

struct HalfOrbit {
    double residual;
    double t_half;
    double radial_spread;
};

HalfOrbit shoot(ProblemKind kind, const ShootingConfig& cfg, double q1) {
    const PhaseState s0{q1, 0.0, 0.0, symmetric_momentum(kind, cfg.family, cfg.c, q1)};
    const int direction = (s0.p2 - s0.q1) > 0.0 ? -1 : 1;
    const auto cr = next_section_crossing(kind, s0, direction, 200.0, cfg.integrator_tol);
    const auto half = integrate(kind, s0, cr.t, cfg.integrator_tol);
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (const auto& n : half.nodes()) {
        const double r = norm(n.s.q());
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    return {cr.s.p1, cr.t, (rmax - rmin) / (rmax + rmin)};
}

}  // namespace

PeriodicOrbit find_symmetric_orbit(ProblemKind kind, const ShootingConfig& cfg) {
    if (kind == ProblemKind::Kepler) throw ArgumentError("find_symmetric_orbit: needs rkp or hill");
    require_at_or_above_critical(kind, cfg.c, "find_symmetric_orbit");
    check_tolerance(cfg.integrator_tol, "find_symmetric_orbit");
    if (cfg.max_newton_iters < 1) throw ArgumentError("find_symmetric_orbit: max_newton_iters must be positive");
    const double ext = hill_region_extent(kind, cfg.c);
    const auto [a, b] = cfg.q1_bracket;
    if (!(0.0 < a && a < b && b <= ext * (1.0 + 1e-12)))
        throw ArgumentError("find_symmetric_orbit: bracket must satisfy 0 < lo < hi <= Hill region extent");

    auto residual = [&](double q1) -> std::optional<HalfOrbit> {
        try {
            return shoot(kind, cfg, q1);
        } catch (const NumericalError&) {
            return std::nullopt;
        } catch (const DomainError&) {
            return std::nullopt;
        }
    };

    constexpr int kScan = 24;
    std::vector<double> xs(kScan + 1);
    std::vector<std::optional<HalfOrbit>> fs(kScan + 1);
    for (int i = 0; i <= kScan; ++i) {
        xs[i] = a + (b - a) * i / kScan;
        fs[i] = residual(xs[i]);
    }

    std::optional<double> best_q1;
    double best_spread = std::numeric_limits<double>::infinity();
    bool bracketed = false;
    for (int i = 0; i < kScan; ++i) {
        if (!fs[i] || !fs[i + 1]) continue;
        const double f0 = fs[i]->residual, f1 = fs[i + 1]->residual;
        if ((f0 < 0.0) == (f1 < 0.0) && f0 != 0.0) continue;
        bracketed = true;
        double root = xs[i];
        if (f0 != 0.0) {
            std::uintmax_t iters = static_cast<std::uintmax_t>(cfg.max_newton_iters);
            try {
                const auto r = boost::math::tools::toms748_solve(
                    [&](double q1) {
                        const auto h = residual(q1);
                        if (!h) throw NumericalError("find_symmetric_orbit: shot failed inside the bracket");
                        return h->residual;
                    },
                    xs[i], xs[i + 1], f0, f1,
                    [](double lo, double hi) { return std::abs(hi - lo) <= 4e-16 * std::abs(hi); }, iters);
                root = 0.5 * (r.first + r.second);
            } catch (const NumericalError&) {
                continue;
            }
        }
        const auto h = residual(root);
        if (!h || std::abs(h->residual) > 1e-10) continue;
        if (h->radial_spread < best_spread) {
            best_spread = h->radial_spread;
            best_q1 = root;
        }
    }
    if (!bracketed) throw NumericalError("find_symmetric_orbit: no sign change of the crossing residual in the bracket");
    if (!best_q1) throw NumericalError("find_symmetric_orbit: root refinement did not converge");

    PeriodicOrbit orbit;
    orbit.kind = kind;
    orbit.family = cfg.family;
    orbit.c = cfg.c;
    orbit.integrator_tol = cfg.integrator_tol;
    orbit.initial = {*best_q1, 0.0, 0.0, symmetric_momentum(kind, cfg.family, cfg.c, *best_q1)};
    const auto half = shoot(kind, cfg, *best_q1);
    orbit.crossing_residual = std::abs(half.residual);
    orbit.period = 2.0 * half.t_half;
    const auto full = integrate(kind, orbit.initial, orbit.period, cfg.integrator_tol);
    orbit.energy_drift = full.energy_drift();
    orbit.samples = full.nodes();
    const auto end = full.nodes().back().s.as_array();
    const auto start = orbit.initial.as_array();
    for (int i = 0; i < 4; ++i) orbit.closure_error = std::max(orbit.closure_error, std::abs(end[i] - start[i]));
    const auto ai = orbit_action_integrals(orbit);
    orbit.action = ai.p_dq;
    orbit.action_form_gap = std::abs(ai.p_dq - ai.minus_q_dp);
    if (orbit.action_form_gap > 1e-9) throw NumericalError("find_symmetric_orbit: action one-forms disagree");
    return orbit;
}

ActionIntegrals orbit_action_integrals(const PeriodicOrbit& orbit) {
    if (!(orbit.period > 0.0)) throw ArgumentError("orbit_action: period must be positive");
    const auto s = orbit.initial;
    State6 x{s.q1, s.q2, s.p1, s.p2, 0.0, 0.0};
    State6 last = x;
    drive(ActionField{orbit.kind}, x, orbit.period, orbit.integrator_tol,
          [&](double, const State6&, double, const State6& x1) {
              last = x1;
              return false;
          });
    ActionIntegrals out{last[4], last[5], 0.0};
    for (int i = 0; i < 4; ++i) out.closure_error = std::max(out.closure_error, std::abs(last[i] - x[i]));
    if (out.closure_error > 1e-9) throw NumericalError("orbit_action: the loop does not close to 1e-9");
    return out;
}

double orbit_action(const PeriodicOrbit& orbit) {
    const auto ai = orbit_action_integrals(orbit);
    if (std::abs(ai.p_dq - ai.minus_q_dp) > 1e-9) throw NumericalError("orbit_action: action one-forms disagree");
    return ai.p_dq;
}

ConjectureReport conjecture_check(double c, OrbitFamily family) {
    const auto orbit = find_symmetric_orbit(ProblemKind::HillLunar, default_shooting_config(ProblemKind::HillLunar, family, c));
    const OrbitClassLabel label{family, 1};
    ConjectureReport rep;
    rep.c = c;
    rep.family = family;
    rep.action = orbit.action;
    rep.lo = hill_lower_bound(c, label);
    rep.hi = hill_upper_bound(c, label).value;
    rep.inside = rep.lo <= rep.action && rep.action <= rep.hi;
    rep.orbit = orbit;
    return rep;
}

}  // namespace celestial
