#include "celestial/systolic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "celestial/errors.hpp"
#include "celestial/hamiltonians.hpp"
#include "celestial/parallel.hpp"
#include "celestial/rkp_spectrum.hpp"

namespace celestial {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanels = 32;
constexpr std::int64_t kBatch = 4096;
constexpr int kFiberNodes = 128;
constexpr unsigned kInnerDepth = 12;
constexpr unsigned kOuterDepth = 15;
constexpr double kInnerTol = 1e-13;

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

void require_quadrature_level(double c, double rel_tol) {
    if (!std::isfinite(c) || c < 1.5 + 1e-9) throw DomainError("contact_volume: needs c >= 3/2 + 1e-9");
    if (!(rel_tol >= 1e-10) || !(rel_tol < 1.0)) throw ArgumentError("contact_volume: rel_tol must lie in [1e-10, 1)");
}

double integrand(double c, double r, double theta) {
    const double s = r * r + 2.0 * c;
    const double disc = s * s + 16.0 * r * std::cos(theta);
    if (disc < 0.0) throw DomainError("contact_volume: negative discriminant, c is too close to 3/2");
    const double den = s + std::sqrt(disc);
    return 32.0 * kPi * r / (den * den);
}

struct PanelResult {
    double value = 0.0;
    double error = 0.0;
    std::int64_t evals = 0;
};

/// Panel edges in u, clustered towards u = 1 where r = u/(1-u) runs off to infinity.
double panel_edge(int i) {
    const double s = static_cast<double>(i) / kPanels;
    return 1.0 - (1.0 - s) * (1.0 - s);
}

PanelResult integrate_panel(double c, double rel_tol, int i) {
    PanelResult out;
    auto inner = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double r = u / (1.0 - u);
        const double jac = 1.0 / ((1.0 - u) * (1.0 - u));
        double err = 0.0;
        const double v = GK::integrate([&](double th) { ++out.evals; return integrand(c, r, th); }, 0.0, kPi,
                                       kInnerDepth, kInnerTol, &err);
        return 2.0 * v * jac;
    };
    out.value = GK::integrate(inner, panel_edge(i), panel_edge(i + 1), kOuterDepth, 0.1 * rel_tol, &out.error);
    return out;
}

VolumeResult assemble(const std::vector<PanelResult>& panels, double rel_tol) {
    VolumeResult v;
    v.method = VolumeMethod::Quadrature;
    for (const auto& p : panels) {
        v.value += p.value;
        v.error_estimate += p.error;
        v.samples_or_evals += p.evals;
    }
    if (!(v.error_estimate <= rel_tol * v.value)) throw NumericalError("contact_volume_quadrature: tolerance not met");
    return v;
}

/// Area of the fiber over a momentum of length R, by the periodic trapezoid rule in theta.
double fiber_area(double c, double R) {
    const double s = R * R + 2.0 * c;
    double sum = 0.0;
    for (int j = 0; j < kFiberNodes; ++j) {
        const double disc = s * s + 16.0 * R * std::cos(2.0 * kPi * j / kFiberNodes);
        const double r = 4.0 / (s + std::sqrt(disc));
        sum += r * r;
    }
    return 0.5 * sum * 2.0 * kPi / kFiberNodes;
}

struct BatchSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

BatchSums mc_batch(double c, double p_max, std::uint64_t seed, std::int64_t batch, std::int64_t count) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
    std::mt19937_64 gen(seq);
    BatchSums out;
    for (std::int64_t i = 0; i < count; ++i) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double R = p_max * std::sqrt(u);
        const double a = fiber_area(c, R);
        out.sum += a;
        out.sum_sq += a * a;
    }
    return out;
}

void require_mc_args(double c, std::int64_t n, double p_max) {
    if (!std::isfinite(c) || c < 1.5 + 1e-9) throw DomainError("contact_volume_mc: needs c >= 3/2 + 1e-9");
    if (n < 10000) throw ArgumentError("contact_volume_mc: n must be at least 10^4");
    if (!(p_max >= 4.0) || !std::isfinite(p_max)) throw ArgumentError("contact_volume_mc: p_max must be at least 4");
}

VolumeResult mc_finish(double c, std::int64_t n, std::uint64_t seed, double p_max, const std::vector<BatchSums>& b) {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& s : b) {
        sum += s.sum;
        sum_sq += s.sum_sq;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1.0));
    const double disk = kPi * p_max * p_max;
    const double s0 = p_max * p_max + 2.0 * c;
    const double tail = 8.0 * kPi * kPi / s0;
    const double tail_remainder = 160.0 * kPi * kPi / (s0 * s0 * s0 * s0);
    VolumeResult v;
    v.method = VolumeMethod::MonteCarlo;
    v.value = 2.0 * disk * mean + tail;
    v.error_estimate = 2.0 * disk * std::sqrt(var / n) + tail_remainder;
    v.samples_or_evals = n;
    v.seed = seed;
    return v;
}

}  // namespace

std::string_view to_string(VolumeMethod m) {
    switch (m) {
        case VolumeMethod::Quadrature: return "quadrature";
        case VolumeMethod::ClosedForm: return "closed_form";
        case VolumeMethod::MonteCarlo: return "monte_carlo";
    }
    return "unknown";
}

VolumeResult contact_volume_quadrature_serial(double c, double rel_tol) {
    require_quadrature_level(c, rel_tol);
    std::vector<PanelResult> panels(kPanels);
    for (int i = 0; i < kPanels; ++i) panels[i] = integrate_panel(c, rel_tol, i);
    return assemble(panels, rel_tol);
}

VolumeResult contact_volume_quadrature(double c, double rel_tol) {
    require_quadrature_level(c, rel_tol);
    std::vector<PanelResult> panels(kPanels);
    ParallelErrorSlot errors;
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < kPanels; ++i) {
        try {
            panels[i] = integrate_panel(c, rel_tol, i);
        } catch (...) {
            errors.capture(i);
        }
    }
    errors.rethrow_if_any();
    return assemble(panels, rel_tol);
}

VolumeResult contact_volume_closed_form(double c) {
    const double rho = hill_region_extent(ProblemKind::RotatingKepler, c);
    VolumeResult v;
    v.method = VolumeMethod::ClosedForm;
    v.value = 8.0 * kPi * kPi * (rho + std::pow(rho, 4) / 8.0 - 0.5 * c * rho * rho);
    v.samples_or_evals = 1;
    return v;
}

VolumeResult contact_volume_mc_serial(double c, std::int64_t n, std::uint64_t seed, double p_max) {
    require_mc_args(c, n, p_max);
    const std::int64_t batches = (n + kBatch - 1) / kBatch;
    std::vector<BatchSums> sums(batches);
    for (std::int64_t b = 0; b < batches; ++b) sums[b] = mc_batch(c, p_max, seed, b, std::min(kBatch, n - b * kBatch));
    return mc_finish(c, n, seed, p_max, sums);
}

VolumeResult contact_volume_mc(double c, std::int64_t n, std::uint64_t seed, double p_max) {
    require_mc_args(c, n, p_max);
    const std::int64_t batches = (n + kBatch - 1) / kBatch;
    std::vector<BatchSums> sums(batches);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < batches; ++b) sums[b] = mc_batch(c, p_max, seed, b, std::min(kBatch, n - b * kBatch));
    return mc_finish(c, n, seed, p_max, sums);
}

double systolic_ratio(double c, VolumeMethod method) {
    if (!(c > 1.5)) throw DomainError("systolic_ratio: needs c > 3/2");
    double vol = 0.0;
    switch (method) {
        case VolumeMethod::Quadrature: vol = contact_volume_quadrature(c).value; break;
        case VolumeMethod::ClosedForm: vol = contact_volume_closed_form(c).value; break;
        case VolumeMethod::MonteCarlo: vol = contact_volume_mc(c, 100000, 42).value; break;
    }
    const double sys = systole_rkp(c);
    return vol / (sys * sys);
}

}  // namespace celestial
