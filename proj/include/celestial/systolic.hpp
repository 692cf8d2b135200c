#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace celestial {

enum class VolumeMethod { Quadrature, ClosedForm, MonteCarlo };

std::string_view to_string(VolumeMethod m);

struct VolumeResult {
    double value = 0.0;
    VolumeMethod method = VolumeMethod::Quadrature;
    double error_estimate = 0.0;
    std::int64_t samples_or_evals = 0;
    std::optional<std::uint64_t> seed;
};

VolumeResult contact_volume_quadrature(double c, double rel_tol = 1e-10);
/// Single-threaded reference for contact_volume_quadrature.
VolumeResult contact_volume_quadrature_serial(double c, double rel_tol = 1e-10);

VolumeResult contact_volume_closed_form(double c);

inline constexpr double kMonteCarloRadius = 8.0;

VolumeResult contact_volume_mc(double c, std::int64_t n, std::uint64_t seed, double p_max = kMonteCarloRadius);
/// Single-threaded reference for contact_volume_mc.
VolumeResult contact_volume_mc_serial(double c, std::int64_t n, std::uint64_t seed,
                                      double p_max = kMonteCarloRadius);

double systolic_ratio(double c, VolumeMethod method = VolumeMethod::Quadrature);

}  // namespace celestial
