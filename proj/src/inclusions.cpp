#include "celestial/inclusions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "celestial/errors.hpp"
#include "celestial/moser.hpp"
#include "celestial/parallel.hpp"

namespace celestial {

namespace {

struct PointResult {
    double min_margin = std::numeric_limits<double>::infinity();
    double min_theta = 0.0;
    double kappa_min = std::numeric_limits<double>::infinity();
    double kappa_max = -std::numeric_limits<double>::infinity();
    std::size_t disagreements = 0;
};

struct GridLayout {
    std::vector<Vec2> points;
    std::vector<int> ring;
    std::vector<double> thetas;
};

GridLayout make_layout(const SweepGrid& grid) {
    if (grid.n_p < 8 || grid.n_theta < 8) throw ArgumentError("fiber sweep: grids need at least 8 points");
    if (!(grid.p_max > 0.0) || !std::isfinite(grid.p_max)) throw ArgumentError("fiber sweep: p_max must be positive");
    GridLayout g;
    g.points.push_back({0.0, 0.0});
    g.ring.push_back(0);
    for (int i = 1; i < grid.n_p; ++i) {
        const double rad = grid.p_max * i / (grid.n_p - 1);
        for (int j = 0; j < grid.n_p; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / grid.n_p;
            g.points.push_back({rad * std::cos(phi), rad * std::sin(phi)});
            g.ring.push_back(i);
        }
    }
    for (int j = 0; j < grid.n_theta; ++j) g.thetas.push_back(2.0 * std::numbers::pi * j / grid.n_theta);
    return g;
}

PointResult evaluate_point(const FiberPair& pair, const Vec2& p, const std::vector<double>& thetas, double tol) {
    PointResult r;
    for (double theta : thetas) {
        double ri = 0.0, ro = 0.0;
        try {
            ri = pair.inner(p, theta);
            ro = pair.outer(p, theta);
        } catch (const std::exception& e) {
            char where[128];
            std::snprintf(where, sizeof where, " at p=(%.6g, %.6g), theta=%.6g", p[0], p[1], theta);
            throw NumericalError(std::string(e.what()) + where);
        }
        const double margin = ro - ri;
        if (margin < r.min_margin) {
            r.min_margin = margin;
            r.min_theta = theta;
        }
        const double kappa = ro / ri;
        r.kappa_min = std::min(r.kappa_min, kappa);
        r.kappa_max = std::max(r.kappa_max, kappa);
        if (pair.outer_residual) {
            const double res = pair.outer_residual({ri * std::cos(theta), ri * std::sin(theta)}, p);
            const double band = tol * std::max(1.0, std::abs(ri));
            const bool radial_in = margin >= band;
            const bool radial_out = margin <= -band;
            const bool sign_in = res <= -tol;
            const bool sign_out = res >= tol;
            if ((radial_in && sign_out) || (radial_out && sign_in)) ++r.disagreements;
        }
    }
    return r;
}

InclusionReport reduce(const GridLayout& g, const std::vector<PointResult>& results, const SweepGrid& grid,
                       double tol) {
    InclusionReport rep;
    rep.p_samples = g.points.size();
    rep.theta_samples = g.thetas.size();
    rep.worst_margin = std::numeric_limits<double>::infinity();
    rep.kappa_min = std::numeric_limits<double>::infinity();
    rep.kappa_max = -std::numeric_limits<double>::infinity();
    rep.outer_ring_margins.fill(std::numeric_limits<double>::infinity());
    const int first_tail_ring = grid.n_p - 3;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (r.min_margin < rep.worst_margin) {
            rep.worst_margin = r.min_margin;
            rep.worst_p = g.points[i];
            rep.worst_theta = r.min_theta;
        }
        rep.kappa_min = std::min(rep.kappa_min, r.kappa_min);
        rep.kappa_max = std::max(rep.kappa_max, r.kappa_max);
        rep.criteria_disagreements += r.disagreements;
        const int tail = g.ring[i] - first_tail_ring;
        if (tail >= 0) rep.outer_ring_margins[tail] = std::min(rep.outer_ring_margins[tail], r.min_margin);
    }
    rep.holds = rep.worst_margin >= -tol;
    return rep;
}

}  // namespace

InclusionReport compare_fibers_serial(const FiberPair& pair, const SweepGrid& grid, double tolerance) {
    const auto g = make_layout(grid);
    std::vector<PointResult> results(g.points.size());
    for (std::size_t i = 0; i < g.points.size(); ++i) results[i] = evaluate_point(pair, g.points[i], g.thetas, tolerance);
    return reduce(g, results, grid, tolerance);
}

InclusionReport compare_fibers(const FiberPair& pair, const SweepGrid& grid, double tolerance) {
    const auto g = make_layout(grid);
    const long n = static_cast<long>(g.points.size());
    std::vector<PointResult> results(g.points.size());
    ParallelErrorSlot errors;
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) {
        try {
            results[i] = evaluate_point(pair, g.points[i], g.thetas, tolerance);
        } catch (...) {
            errors.capture(i);
        }
    }
    errors.rethrow_if_any();
    return reduce(g, results, grid, tolerance);
}

InclusionReport verify_fiber_inclusion(const DomainSpec& inner, const DomainSpec& outer, int n_p, int n_theta,
                                       double p_max, double tolerance) {
    for (const auto* d : {&inner, &outer}) {
        if (d->kind == ProblemKind::Kepler) throw ArgumentError("verify_fiber_inclusion: only rkp and hill domains");
        require_at_or_above_critical(d->kind, d->c, "verify_fiber_inclusion");
    }
    auto radius = [](DomainSpec d) {
        return [d](const Vec2& p, double theta) { return radial_fiber_point(d.kind, d.c, {p, theta}); };
    };
    FiberPair pair{radius(inner), radius(outer), [outer](const Vec2& q, const Vec2& p) {
                       return eval_hamiltonian(outer.kind, {q[0], q[1], p[0], p[1]}) + outer.c;
                   }};
    return compare_fibers(pair, {n_p, n_theta, p_max}, tolerance);
}

double threshold_c_H(int P) {
    if (P == 0) return critical_value(ProblemKind::HillLunar);
    if (P == 1) throw ArgumentError("threshold_c_H: the sequence is used from P = 2 on");
    if (P < 0) throw ArgumentError("threshold_c_H: P must be non-negative");
    const double p1 = P + 1.0;
    return (2.0 * P + 8.0 - std::sqrt(p1 * (P + 9.0))) / (2.0 * std::cbrt(p1));
}

double outer_rkp_level(double c) {
    require_at_or_above_critical(ProblemKind::HillLunar, c, "outer_rkp_level");
    return c - 1.0 / std::cbrt(9.0);
}

double inner_rkp_level(double c) {
    require_at_or_above_critical(ProblemKind::HillLunar, c, "inner_rkp_level");
    return c + 0.5 / (c * c);
}

int select_cover_order(double c) {
    require_at_or_above_critical(ProblemKind::HillLunar, c, "select_cover_order");
    if (c < threshold_c_H(2)) return 1;
    int P = 2;
    while (threshold_c_H(P + 1) <= c) ++P;
    return P;
}

double tangency_identity_residual(int P) {
    if (P < 2) throw ArgumentError("tangency_identity_residual: P must be at least 2");
    const double p1 = P + 1.0;
    const double qbar = (std::sqrt(P + 9.0) - std::sqrt(p1)) / (2.0 * std::pow(p1, 1.0 / 6.0));
    const double c_R = (P + 3.0) / (2.0 * std::cbrt(p1));
    return std::abs(qbar * qbar - (threshold_c_H(P) - c_R));
}

bool inner_level_radius_bound_holds(double c, int n_samples) {
    const double level = inner_rkp_level(c);
    if (n_samples < 1) throw ArgumentError("inner_level_radius_bound_holds: n_samples must be positive");
    const double bound = 1.0 / c + 1e-12;
    const int side = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_samples)))));
    const double rho = hill_region_extent(ProblemKind::RotatingKepler, level);
    std::vector<Vec2> ps;
    for (int i = 0; i < side; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / side;
        // The fiber over p = perp(q) at the rim of the Hill region reaches |q| = rho.
        ps.push_back(perp({rho * std::cos(phi), rho * std::sin(phi)}));
        for (int j = 1; j < side; ++j) {
            const double rad = 4.0 * j / side;
            ps.push_back({rad * std::cos(phi), rad * std::sin(phi)});
        }
    }
    for (const auto& p : ps)
        for (int t = 0; t < side; ++t) {
            const double theta = 2.0 * std::numbers::pi * t / side;
            if (radial_fiber_point(ProblemKind::RotatingKepler, level, {p, theta}) > bound) return false;
        }
    return true;
}

}  // namespace celestial
