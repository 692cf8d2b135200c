#pragma once

#include <vector>

#include "celestial/rkp_spectrum.hpp"

namespace celestial {

struct OrbitClassLabel {
    OrbitFamily family = OrbitFamily::Retrograde;
    int N = 1;
};

/// Action interval known to meet the spectrum, labelled with the index of the class.
struct CapacityInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool hi_open = false;
    int cz_index = 1;
    OrbitClassLabel label;
    int P = 1;
};

struct UpperBound {
    double value = 0.0;
    bool open = false;      ///< strict inequality
    double global_cap = 0.0;  ///< energy-independent bound, N = 1 only (zero otherwise)
};

double capacity_rkp(double c, OrbitClassLabel label);
double hill_lower_bound(double c, OrbitClassLabel label);
UpperBound hill_upper_bound(double c, OrbitClassLabel label);
/// Energy-independent upper bound for the first iterate of family.
double hill_upper_cap(OrbitFamily family);
std::vector<CapacityInterval> spectral_gaps(double c);
double hill_systole_upper(double c);

int cz_index_label(OrbitClassLabel label);

}  // namespace celestial
