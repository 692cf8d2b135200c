#include <doctest.h>

#include "celestial/errors.hpp"
#include "celestial/hamiltonians.hpp"
#include "celestial/rkp_spectrum.hpp"
#include "celestial/systolic.hpp"
#include "oracles.hpp"

using namespace celestial;
using doctest::Approx;

namespace {

constexpr double pi2 = oracle::pi * oracle::pi;

}  // namespace

TEST_CASE("closed form volumes") {
    CHECK(contact_volume_closed_form(1.5).value == Approx(3 * pi2).epsilon(1e-14));
    CHECK(contact_volume_closed_form(2.0).value == Approx(oracle::frozen::vol_2).epsilon(1e-14));
    CHECK(contact_volume_closed_form(1.6).value == Approx(oracle::frozen::vol_1_6).epsilon(1e-14));
    CHECK(contact_volume_closed_form(5.0).value == Approx(oracle::frozen::vol_5).epsilon(1e-14));
    CHECK(contact_volume_closed_form(20.0).value == Approx(oracle::frozen::vol_20).epsilon(1e-14));
    CHECK(contact_volume_closed_form(50.0).value == Approx(oracle::frozen::vol_50).epsilon(1e-13));
    CHECK(hill_region_extent(ProblemKind::RotatingKepler, 2.0) == Approx(oracle::frozen::rho_2).epsilon(1e-14));
    CHECK(contact_volume_closed_form(1e4).value * 1e4 == Approx(4 * pi2).epsilon(1e-3));
    CHECK(contact_volume_closed_form(2.0).method == VolumeMethod::ClosedForm);
    CHECK_THROWS_AS(contact_volume_closed_form(1.4), DomainError);
    double prev = contact_volume_closed_form(1.5).value;
    for (double c = 1.55; c < 30.0; c += 0.05) {
        const double v = contact_volume_closed_form(c).value;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("quadrature agrees with the closed form") {
    for (double c : {1.6, 2.0, 5.0, 20.0, 50.0, 1.5001}) {
        CAPTURE(c);
        const auto q = contact_volume_quadrature(c);
        const double ref = contact_volume_closed_form(c).value;
        CHECK(std::abs(q.value - ref) < 1e-6 * ref);
        CHECK(std::abs(q.value - ref) < 1e-9 * ref);
        CHECK(q.error_estimate >= 0.0);
        CHECK(q.error_estimate <= 1e-10 * q.value);
        CHECK(q.samples_or_evals > 0);
        CHECK(q.method == VolumeMethod::Quadrature);
        CHECK_FALSE(q.seed.has_value());
    }
}

TEST_CASE("quadrature near the critical level and far above it") {
    CHECK(contact_volume_quadrature(1.5 + 1e-6).value == Approx(3 * pi2).epsilon(1e-3));
    CHECK(contact_volume_quadrature(50.0).value == Approx(4 * pi2 / 50).epsilon(2e-2));
    CHECK(contact_volume_quadrature(2.0, 1e-6).value == Approx(oracle::frozen::vol_2).epsilon(1e-6));
    CHECK_THROWS_AS(contact_volume_quadrature(2.0, 1e-12), ArgumentError);
    CHECK_THROWS_AS(contact_volume_quadrature(1.5), DomainError);
}

TEST_CASE("monte carlo estimate") {
    const auto m = contact_volume_mc(2.0, 100000, 42);
    CHECK(std::abs(m.value - oracle::frozen::vol_2) < 3 * m.error_estimate);
    CHECK(m.error_estimate > 0.0);
    CHECK(m.samples_or_evals == 100000);
    REQUIRE(m.seed.has_value());
    CHECK(*m.seed == 42u);
    CHECK(m.method == VolumeMethod::MonteCarlo);
    const auto again = contact_volume_mc(2.0, 100000, 42);
    CHECK(again.value == m.value);
    CHECK(again.error_estimate == m.error_estimate);
    CHECK(contact_volume_mc(2.0, 100000, 43).value != m.value);
    for (double c : {1.6, 5.0}) {
        const auto r = contact_volume_mc(c, 100000, 7);
        CHECK(std::abs(r.value - contact_volume_closed_form(c).value) < 4 * r.error_estimate);
    }
}

TEST_CASE("monte carlo error scales like the inverse square root") {
    const double e4 = contact_volume_mc(2.0, 10000, 5).error_estimate;
    const double e6 = contact_volume_mc(2.0, 1000000, 5).error_estimate;
    CHECK(e4 / e6 == Approx(10.0).epsilon(0.15));
}

TEST_CASE("monte carlo arguments") {
    CHECK_THROWS_AS(contact_volume_mc(2.0, 100, 1), ArgumentError);
    CHECK_THROWS_AS(contact_volume_mc(2.0, 100000, 1, 1.0), ArgumentError);
    CHECK_THROWS_AS(contact_volume_mc(1.5, 100000, 1), DomainError);
}

TEST_CASE("systolic ratio") {
    CHECK(std::abs(systolic_ratio(2.0) - 2.5400) < 1e-3);
    CHECK(systolic_ratio(2.0) == Approx(oracle::frozen::ratio_2).epsilon(1e-9));
    CHECK(systolic_ratio(2.0, VolumeMethod::ClosedForm) == Approx(oracle::frozen::ratio_2).epsilon(1e-14));
    CHECK(std::abs(systolic_ratio(1.5001) - 3.0) < 0.02);
    CHECK(systolic_ratio(1.5001) == Approx(oracle::frozen::ratio_1_5001).epsilon(1e-9));
    CHECK(std::abs(systolic_ratio(200.0) - 2.0) < 0.01);
    CHECK(systolic_ratio(200.0) == Approx(oracle::frozen::ratio_200).epsilon(1e-9));
    const double s = systole_rkp(2.0);
    CHECK(systolic_ratio(2.0) == Approx(contact_volume_closed_form(2.0).value / (s * s)));
    double prev = systolic_ratio(1.51, VolumeMethod::ClosedForm);
    for (double c = 1.6; c < 40.0; c += 0.1) {
        const double r = systolic_ratio(c, VolumeMethod::ClosedForm);
        CHECK(r < prev);
        CHECK(r > 2.0);
        CHECK(r < 3.0);
        prev = r;
    }
    CHECK_THROWS_AS(systolic_ratio(1.5), DomainError);
}

TEST_CASE("method names") {
    CHECK(to_string(VolumeMethod::Quadrature) == "quadrature");
    CHECK(to_string(VolumeMethod::ClosedForm) == "closed_form");
    CHECK(to_string(VolumeMethod::MonteCarlo) == "monte_carlo");
}
