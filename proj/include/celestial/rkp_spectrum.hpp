#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace celestial {

enum class OrbitFamily { Retrograde, Direct };

std::string_view to_string(OrbitFamily f);
OrbitFamily parse_orbit_family(std::string_view name);

/// The two real roots of f(x) = 1/(2x^2) - x = c.
struct CircularRootPair {
    double c = 1.5;
    double L_R = 0.5;
    double L_D = -1.0;
};

/// f(x) = 1/(2x^2) - x.
double circular_root_function(double x);

CircularRootPair circular_roots(double c);

/// Positive root of f(x) = c, defined for every real c.
double retrograde_root_any(double c);

double retrograde_action(double c, int N);
double direct_action(double c, int N);

struct TorusOrbit {
    int k = 2;
    int l = 1;
    double E_kl = 0.0;
    double c_minus = 0.0;
    double c_plus = 0.0;
};

TorusOrbit torus_orbit(int k, int l);
bool torus_exists(int k, int l, double c);

enum class WindowPolicy { Open, Closed };

double torus_action(int k, int l, double c, WindowPolicy policy = WindowPolicy::Open);

int cz_index_circular(OrbitFamily family, int N, double c);
int cz_index_torus(int k, int l);

inline constexpr double kDegeneracyTolerance = 1e-9;

struct SpectrumEntry {
    enum class Family { RetrogradeIterate, DirectIterate, Torus };
    Family family = Family::RetrogradeIterate;
    int N = 0;
    int k = 0;
    int l = 0;
    double action = 0.0;
    std::optional<int> cz_index;
};

std::string_view to_string(SpectrumEntry::Family f);

/// Every orbit class with action at most cutoff, sorted ascending by action.
std::vector<SpectrumEntry> enumerate_spectrum(double c, double cutoff);

double systole_rkp(double c);

double threshold_c_R(int P);

struct GeneratorOrder {
    int P = 0;
};

GeneratorOrder generator_order(double c);

int sh_rank(int degree, int P);

}  // namespace celestial
