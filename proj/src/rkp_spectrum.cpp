#include "celestial/rkp_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "celestial/errors.hpp"

namespace celestial {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cubic(double c, double x) { return (2.0 * x + 2.0 * c) * x * x - 1.0; }

double newton_polish(double c, double x) {
    const double df = (6.0 * x + 4.0 * c) * x;
    if (std::abs(df) > 1e-8) x -= cubic(c, x) / df;
    return x;
}

double trig_root(double c, double shift) {
    const double s = std::sqrt(3.0 / (2.0 * c));
    const double arg = std::clamp(s * s * s, -1.0, 1.0);
    return 0.5 * s / std::cos(std::acos(arg) / 3.0 + shift);
}

void require_open_level(double c, const char* where) {
    if (!std::isfinite(c) || !(c > 1.5)) throw DomainError(std::string(where) + ": needs c > 3/2");
}

void require_positive(int n, const char* where) {
    if (n < 1) throw ArgumentError(std::string(where) + ": N must be at least 1");
}

void require_torus_pair(int k, int l) {
    if (!(l >= 1 && k > l)) throw ArgumentError("torus orbit needs k > l >= 1");
}

}  // namespace

std::string_view to_string(OrbitFamily f) { return f == OrbitFamily::Retrograde ? "retrograde" : "direct"; }

OrbitFamily parse_orbit_family(std::string_view name) {
    if (name == "retrograde" || name == "R") return OrbitFamily::Retrograde;
    if (name == "direct" || name == "D") return OrbitFamily::Direct;
    throw ArgumentError("unknown orbit family '" + std::string(name) + "'");
}

std::string_view to_string(SpectrumEntry::Family f) {
    switch (f) {
        case SpectrumEntry::Family::RetrogradeIterate: return "retrograde";
        case SpectrumEntry::Family::DirectIterate: return "direct";
        case SpectrumEntry::Family::Torus: return "torus";
    }
    return "unknown";
}

double circular_root_function(double x) { return 0.5 / (x * x) - x; }

CircularRootPair circular_roots(double c) {
    if (!std::isfinite(c) || c < 1.5) throw DomainError("circular_roots: needs c >= 3/2");
    CircularRootPair out;
    out.c = c;
    out.L_R = std::min(newton_polish(c, trig_root(c, 0.0)), 0.5);
    out.L_D = std::max(newton_polish(c, trig_root(c, 2.0 * std::numbers::pi / 3.0)), -1.0);
    if (c == 1.5) out = {c, 0.5, -1.0};
    return out;
}

double retrograde_root_any(double c) {
    if (!std::isfinite(c)) throw ArgumentError("retrograde_root_any: c must be finite");
    if (c >= 1.5) return circular_roots(c).L_R;
    // 2x^3 + 2c x^2 - 1 is negative at 0 and increasing on x > 0 whenever it is negative there.
    double lo = 0.0, hi = 1.0;
    while (cubic(c, hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cubic(c, mid) < 0.0 ? lo : hi) = mid;
    }
    return newton_polish(c, 0.5 * (lo + hi));
}

double retrograde_action(double c, int N) {
    require_positive(N, "retrograde_action");
    return kTwoPi * N * circular_roots(c).L_R;
}

double direct_action(double c, int N) {
    require_positive(N, "direct_action");
    return -kTwoPi * N * circular_roots(c).L_D;
}

TorusOrbit torus_orbit(int k, int l) {
    require_torus_pair(k, l);
    const double ratio = static_cast<double>(k) / l;
    const double e = -0.5 * std::pow(ratio, 2.0 / 3.0);
    const double s = std::cbrt(1.0 / ratio);
    return {k, l, e, -e - s, -e + s};
}

bool torus_exists(int k, int l, double c) {
    require_torus_pair(k, l);
    require_open_level(c, "torus_exists");
    const auto roots = circular_roots(c);
    const double ratio = static_cast<double>(l) / k;
    return roots.L_R * roots.L_R * roots.L_R < ratio && ratio < -roots.L_D * roots.L_D * roots.L_D;
}

double torus_action(int k, int l, double c, WindowPolicy policy) {
    require_torus_pair(k, l);
    require_open_level(c, "torus_action");
    const auto t = torus_orbit(k, l);
    bool inside = torus_exists(k, l, c);
    if (!inside && policy == WindowPolicy::Closed) {
        const double tol = 1e-12 * std::max(1.0, std::abs(c));
        inside = c >= t.c_minus - tol && c <= t.c_plus + tol;
    }
    if (!inside) throw DomainError("torus_action: c is outside the existence window of T(k,l)");
    return kTwoPi * (-l * c + 1.5 * std::pow(static_cast<double>(k), 2.0 / 3.0) * std::cbrt(static_cast<double>(l)));
}

int cz_index_circular(OrbitFamily family, int N, double c) {
    require_positive(N, "cz_index_circular");
    require_open_level(c, "cz_index_circular");
    const auto roots = circular_roots(c);
    const double L = family == OrbitFamily::Retrograde ? roots.L_R : roots.L_D;
    const double x = N / (1.0 + L * L * L);
    const double nearest = std::round(x);
    if (std::abs(x - nearest) < kDegeneracyTolerance)
        throw DegeneracyError("cz_index_circular: N*alpha is an integer, the orbit is degenerate");
    return 1 + 2 * static_cast<int>(std::floor(x));
}

int cz_index_torus(int k, int l) {
    require_torus_pair(k, l);
    return 2 * k - 1;
}

std::vector<SpectrumEntry> enumerate_spectrum(double c, double cutoff) {
    require_open_level(c, "enumerate_spectrum");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw ArgumentError("enumerate_spectrum: cutoff must be positive");
    const auto roots = circular_roots(c);
    const double lr3 = roots.L_R * roots.L_R * roots.L_R;
    const double ld3 = -roots.L_D * roots.L_D * roots.L_D;
    std::vector<SpectrumEntry> out;

    auto circular = [&](SpectrumEntry::Family fam, OrbitFamily of, double unit) {
        for (int N = 1; N * unit <= cutoff; ++N) {
            SpectrumEntry e{fam, N, 0, 0, N * unit, std::nullopt};
            try {
                e.cz_index = cz_index_circular(of, N, c);
            } catch (const DegeneracyError&) {
            }
            out.push_back(e);
        }
    };
    circular(SpectrumEntry::Family::RetrogradeIterate, OrbitFamily::Retrograde, kTwoPi * roots.L_R);
    circular(SpectrumEntry::Family::DirectIterate, OrbitFamily::Direct, -kTwoPi * roots.L_D);

    // Any torus orbit has k > l / ld3 and A > 2 pi (k - l) L_R, so A > 2 pi L_R l (1/ld3 - 1).
    const double l_max = cutoff / (kTwoPi * roots.L_R * (1.0 / ld3 - 1.0));
    for (int l = 1; l < l_max; ++l) {
        const double k_hi = l / lr3;
        for (int k = static_cast<int>(std::floor(l / ld3)) + 1; k < k_hi; ++k) {
            if (k <= l || !torus_exists(k, l, c)) continue;
            const double a = torus_action(k, l, c);
            if (a > cutoff) break;  // the action grows with k
            out.push_back({SpectrumEntry::Family::Torus, 0, k, l, a, cz_index_torus(k, l)});
        }
    }
    std::sort(out.begin(), out.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        return std::tie(a.action, a.family, a.N, a.k, a.l) < std::tie(b.action, b.family, b.N, b.k, b.l);
    });
    return out;
}

double systole_rkp(double c) { return retrograde_action(c, 1); }

double threshold_c_R(int P) {
    if (P < 0) throw ArgumentError("threshold_c_R: P must be non-negative");
    return (P + 3.0) / (2.0 * std::cbrt(P + 1.0));
}

GeneratorOrder generator_order(double c) {
    require_open_level(c, "generator_order");
    const auto roots = circular_roots(c);
    const double x = -1.0 / (roots.L_D * roots.L_D * roots.L_D);
    int p_root = static_cast<int>(std::ceil(x)) - 2;
    p_root = std::max(p_root, 0);
    int p_thr = p_root;
    while (p_thr > 0 && threshold_c_R(p_thr) > c) --p_thr;
    while (threshold_c_R(p_thr + 1) <= c) ++p_thr;
    const double near = std::min(std::abs(c - threshold_c_R(p_thr)), std::abs(c - threshold_c_R(p_thr + 1)));
    if (p_thr != p_root && near > 1e-9 * c)
        throw NumericalError("generator_order: threshold and root characterizations disagree");
    return {p_thr};
}

int sh_rank(int degree, int P) {
    if (P < 0 || degree < 0 || degree > 2 * P) throw ArgumentError("sh_rank: degree must lie in [0, 2P]");
    return degree <= 1 ? 1 : 2;
}

}  // namespace celestial
