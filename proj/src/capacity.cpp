#include "celestial/capacity.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "celestial/errors.hpp"
#include "celestial/hamiltonians.hpp"
#include "celestial/inclusions.hpp"

namespace celestial {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double circular_root(OrbitFamily f, double c) {
    const auto roots = circular_roots(c);
    return f == OrbitFamily::Retrograde ? roots.L_R : -roots.L_D;
}

void require_label(OrbitClassLabel label, const char* where) {
    if (label.N < 1) throw ArgumentError(std::string(where) + ": N must be at least 1");
}

/// Cover order P used for the Hill bounds of label at c.
int hill_order(double c, OrbitClassLabel label, const char* where) {
    require_label(label, where);
    const int P = select_cover_order(c);
    if (label.N > 1 && label.N > P)
        throw DomainError(std::string(where) + ": N exceeds the cover order at this energy");
    return P;
}

double cover_upper(OrbitFamily f, int N, int P) {
    const double p1 = P + 1.0;
    if (f == OrbitFamily::Retrograde) return kTwoPi * N * (-p1 + std::sqrt(p1 * (P + 9.0))) / (4.0 * std::cbrt(p1));
    return kTwoPi * N / std::cbrt(p1);
}

}  // namespace

int cz_index_label(OrbitClassLabel label) {
    return label.family == OrbitFamily::Retrograde ? 2 * label.N - 1 : 2 * label.N + 1;
}

double capacity_rkp(double c, OrbitClassLabel label) {
    require_label(label, "capacity_rkp");
    if (label.N > generator_order(c).P)
        throw DomainError("capacity_rkp: the class is not defined at this energy (N exceeds the generator order)");
    return kTwoPi * label.N * circular_root(label.family, c);
}

double hill_lower_bound(double c, OrbitClassLabel label) {
    hill_order(c, label, "hill_lower_bound");
    const double sign = label.family == OrbitFamily::Retrograde ? -1.0 : 1.0;
    const double surd = kTwoPi * label.N * (sign + std::sqrt(1.0 + 8.0 * c * c * c)) / (4.0 * c * c);
    const double via_root = kTwoPi * label.N * circular_root(label.family, inner_rkp_level(c));
    if (std::abs(surd - via_root) > 1e-12 * std::max(1.0, surd))
        throw NumericalError("hill_lower_bound: surd and root forms disagree");
    return surd;
}

double hill_upper_cap(OrbitFamily family) { return kTwoPi * circular_root(family, threshold_c_R(1)); }

UpperBound hill_upper_bound(double c, OrbitClassLabel label) {
    const int P = hill_order(c, label, "hill_upper_bound");
    if (label.N == 1) {
        const double cap = hill_upper_cap(label.family);
        const double v = kTwoPi * circular_root(label.family, outer_rkp_level(c));
        return {std::min(v, cap), true, cap};
    }
    return {cover_upper(label.family, label.N, P), false, 0.0};
}

std::vector<CapacityInterval> spectral_gaps(double c) {
    const int P = select_cover_order(c);
    std::vector<CapacityInterval> out;
    for (OrbitFamily f : {OrbitFamily::Retrograde, OrbitFamily::Direct})
        for (int N = 1; N <= P; ++N) {
            const OrbitClassLabel label{f, N};
            CapacityInterval iv{hill_lower_bound(c, label), cover_upper(f, N, P), P == 1, cz_index_label(label), label, P};
            if (!(iv.lo <= iv.hi)) throw NumericalError("spectral_gaps: interval with lo > hi");
            out.push_back(iv);
        }
    return out;
}

double hill_systole_upper(double c) {
    const double v = kTwoPi * circular_root(OrbitFamily::Retrograde, outer_rkp_level(c));
    if (!(v < std::numbers::pi)) throw NumericalError("hill_systole_upper: bound is not below pi");
    return v;
}

}  // namespace celestial
