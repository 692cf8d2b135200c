#pragma once

// Reference values and slow independent solvers used only by the tests.

#include <cmath>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// High-precision values, computed offline by bisection in 30-digit arithmetic.
namespace frozen {
inline constexpr double L_R_2 = 0.451605962955776643742608112029;
inline constexpr double L_D_2 = -0.596968283237315224128042278467;
inline constexpr double L_R_cR1 = 0.490533901946842720732898174043;
inline constexpr double L_D_cR1 = -0.793700525984099737375852819636;
inline constexpr double L_R_1_6 = 0.489208616786848686785253411651;
inline constexpr double L_D_1_6 = -0.781660771647139738101813528013;
inline constexpr double L_R_3 = 0.384367152638141568980438403979;
inline constexpr double L_D_3 = -0.442125301668475412470820216826;
inline constexpr double L_R_2_2 = 0.435560518045801698617681381038;
inline constexpr double L_D_2_2 = -0.550578390875167015106056874456;

inline constexpr double rho_2 = 0.539188872810889116525875902699;
inline constexpr double c_H0 = 2.16337435546111257348245746617;
inline constexpr double hill_extent_cH0 = 0.693361274350634704843352274786;

inline constexpr double c_H[7] = {c_H0, 0.0, 2.16863900750847709452734320033, 2.22747640268861326956509189709,
                                  2.32100991453367774589329639671, 2.43100228045912023046786462409,
                                  2.54924205373280073896971583883};
inline constexpr double c_R[7] = {1.5,
                                  1.58740105196819947475,
                                  1.73340318587658676210838068697,
                                  1.88988157484230974715081591092,
                                  2.0468124167490062458547511521,
                                  2.20128483259641778924973996827,
                                  2.35241081358619597536733284222};

inline constexpr double A_R_2 = 2.83752395107842442258300827187;
inline constexpr double A_D_2 = 3.75086234608892084119145329607;
inline constexpr double A_D3_2 = 11.2525870382667625235743598882;
inline constexpr double alpha_R_2 = 0.915663618758227847318310464182;
inline constexpr double alpha_D_2 = 1.27023203738393691023184077478;
inline constexpr double torus_5_1_at_2 = 14.9918473216481768639851863512;
inline constexpr double E_5_3 = -0.702860554418124369038091459505;

inline constexpr double vol_2 = 20.4521364646506969633580941137;
inline constexpr double vol_1_6 = 26.8161931192368709765715411842;
inline constexpr double vol_5 = 7.9116027574296457003477072319;
inline constexpr double vol_20 = 1.97398257295745304484326061254;
inline constexpr double vol_50 = 0.789569931236486109036879734541;
inline constexpr double ratio_2 = 2.54015144246250911213781045306;
inline constexpr double ratio_1_5001 = 2.99973764871649538522734703273;
inline constexpr double ratio_200 = 2.00050000003515430296252583586;

inline constexpr double outer_level_cH0 = 1.68262449869197644604191136258;
inline constexpr double inner_level_2_2 = 2.30330578512396694214876033058;
inline constexpr double inner_level_cH0 = 2.27020765696536504624702326697;

inline constexpr double lower_R_cH0 = 0.430291694597754542402945022572;
inline constexpr double lower_D_cH0 = 0.537124996102007015167510823371;
inline constexpr double lower_R_2_2 = 0.427868481917556366796871699093;
inline constexpr double lower_D_2_2 = 0.531174267041523308945632029671;
inline constexpr double outer_L_R_2_2 = 0.477124573056946164467167113214;
inline constexpr double outer_L_D_2_2 = 0.700605762989907876972532239143;
inline constexpr double cover_R_P2 = 0.475743363534689538633871018106;
inline constexpr double tangency_P2 = 0.43523582163189033241896251336;
}  // namespace frozen

/// Root of g on [lo, hi] with g(lo), g(hi) of opposite sign, by plain bisection in long double.
template <class G>
long double bisect(G g, long double lo, long double hi) {
    long double glo = g(lo);
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        const long double gm = g(mid);
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5L * (lo + hi);
}

/// Positive and negative roots of 2x^3 + 2c x^2 - 1 = 0 for c >= 3/2.
inline std::pair<double, double> circular_roots_bisection(double c) {
    auto g = [c](long double x) { return 2.0L * x * x * x + 2.0L * c * x * x - 1.0L; };
    const double lr = static_cast<double>(bisect(g, 0.0L, 0.5L + 1e-18L));
    // g has its local maximum at -2c/3 <= -1 and g(0) = -1, so the root nearest zero lies between.
    const double ld = static_cast<double>(bisect(g, -2.0L * c / 3.0L, 0.0L));
    return {lr, ld};
}

/// Smaller positive root of a x^3 - b x + d with the sign change located by a fine scan.
inline double first_positive_root_scan(double a, double b, double d, double upper) {
    auto g = [&](long double x) { return a * x * x * x - b * x + d; };
    const int n = 4000;
    long double prev = 1e-9L;
    for (int i = 1; i <= n; ++i) {
        const long double x = upper * i / n;
        if ((g(x) < 0) != (g(prev) < 0)) return static_cast<double>(bisect(g, prev, x));
        prev = x;
    }
    return std::nan("");
}

/// First sign change of h(r) on (0, upper], located by a fine scan and refined by bisection.
template <class H>
double first_sign_change(H h, double upper, int n = 20000) {
    long double prev = upper * 1e-9;
    long double hprev = h(prev);
    for (int i = 1; i <= n; ++i) {
        const long double x = upper * static_cast<long double>(i) / n;
        const long double hx = h(x);
        if ((hx < 0) != (hprev < 0)) return static_cast<double>(bisect(h, prev, x));
        prev = x;
        hprev = hx;
    }
    return std::nan("");
}

struct TorusEntry {
    int k, l;
    double action;
};

/// All torus orbits with action <= cutoff, by exhaustive search over a generous box.
inline std::vector<TorusEntry> torus_brute_force(double c, double cutoff, int l_box, int k_box) {
    const auto [lr, ld] = circular_roots_bisection(c);
    std::vector<TorusEntry> out;
    for (int l = 1; l <= l_box; ++l)
        for (int k = l + 1; k <= k_box; ++k) {
            const double ratio = static_cast<double>(l) / k;
            if (!(lr * lr * lr < ratio && ratio < -ld * ld * ld)) continue;
            const double a = 2.0 * pi * (-l * c + 1.5 * std::pow(static_cast<double>(k), 2.0 / 3.0) * std::cbrt(l));
            if (a <= cutoff) out.push_back({k, l, a});
        }
    return out;
}

inline std::mt19937_64 rng(std::uint64_t seed = 20240611) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
}

}  // namespace oracle
