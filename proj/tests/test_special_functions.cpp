#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oracles.hpp"
#include "secrecy/special_functions.hpp"

using secrecy::exp_integral_ei;
using secrecy::lambert_w0;

TEST_CASE("Ei matches the quadrature oracle at frozen points") {
    // Reference values independently confirmed by the adaptive-quadrature
    // oracle below (and by 40-digit arithmetic offline).
    CHECK(exp_integral_ei(-1.0) == doctest::Approx(-0.21938393439552027).epsilon(1e-13));
    CHECK(exp_integral_ei(-2.0) == doctest::Approx(-0.048900510708061120).epsilon(1e-13));
    CHECK(exp_integral_ei(-0.5) == doctest::Approx(-0.55977359477616081).epsilon(1e-13));
    CHECK(exp_integral_ei(-5.0) == doctest::Approx(-0.0011482955912753258).epsilon(1e-13));
    CHECK(exp_integral_ei(-10.0) == doctest::Approx(-4.1569689296853243e-6).epsilon(1e-13));
    CHECK(exp_integral_ei(-20.0) == doctest::Approx(-9.8355252906498817e-11).epsilon(1e-13));
    CHECK(exp_integral_ei(-0.01) == doctest::Approx(-4.0379295765381138).epsilon(1e-13));

    for (int i = 0; i < 50; ++i) {
        const double x = -0.01 - (20.0 - 0.01) * i / 49.0;
        const double ref = oracles::ei_reference(x);
        CHECK(exp_integral_ei(x) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("Ei limit and sign behavior") {
    // Integrand vanishes as x -> -inf: Ei approaches 0 from below.
    CHECK(exp_integral_ei(-50.0) < 0.0);
    CHECK(exp_integral_ei(-50.0) > -1e-23);
    CHECK(exp_integral_ei(-300.0) < 0.0);
    for (double x : {-0.001, -0.1, -1.0, -3.0, -30.0}) CHECK(exp_integral_ei(x) < 0.0);
}

TEST_CASE("Ei is strictly decreasing on the negative axis") {
    // dEi/dx = e^x/x < 0 for x < 0: values climb toward 0 as x -> -inf,
    // e.g. Ei(-2) > Ei(-1).
    double prev = exp_integral_ei(-25.0);
    for (int i = 1; i <= 400; ++i) {
        const double x = -25.0 + i * (25.0 - 0.01) / 400.0;
        const double cur = exp_integral_ei(x);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("Ei derivative identity via central differences") {
    for (int i = 0; i < 20; ++i) {
        const double x = -10.0 + i * (10.0 - 0.1) / 19.0;
        const double h = 1e-6 * std::abs(x);
        const double fd = (exp_integral_ei(x + h) - exp_integral_ei(x - h)) / (2.0 * h);
        const double expected = std::exp(x) / x;
        CHECK(fd == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("Ei domain errors") {
    CHECK_THROWS_AS(exp_integral_ei(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_ei(1.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_ei(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(exp_integral_ei(std::numeric_limits<double>::infinity()), std::domain_error);
    CHECK_THROWS_AS(exp_integral_ei(-std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("Lambert W0 trivial and oracle values") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lambert_w0(10.0) == doctest::Approx(oracles::lambert_w0_reference(10.0)).epsilon(1e-13));
    CHECK(lambert_w0(10.0) == doctest::Approx(1.7455280027406994).epsilon(1e-13));
    CHECK(lambert_w0(1.0) == doctest::Approx(0.56714329040978387).epsilon(1e-13));
    CHECK(lambert_w0(0.5) == doctest::Approx(0.35173371124919583).epsilon(1e-13));
    CHECK(lambert_w0(1e6) == doctest::Approx(11.383358086140053).epsilon(1e-13));
}

TEST_CASE("Lambert W0 defining identity on a log-spaced grid") {
    for (int i = 0; i <= 120; ++i) {
        const double x = std::pow(10.0, -6.0 + 12.0 * i / 120.0);
        const double w = lambert_w0(x);
        CHECK(w >= 0.0);
        CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, x));
    }
}

TEST_CASE("Lambert W0 round trip over w in [0,10]") {
    for (int i = 0; i <= 100; ++i) {
        const double w = 10.0 * i / 100.0;
        const double x = w * std::exp(w);
        CHECK(std::abs(lambert_w0(x) - w) <= 1e-10);
    }
}

TEST_CASE("Lambert W0 is strictly increasing") {
    double prev = lambert_w0(0.0);
    for (int i = 1; i <= 300; ++i) {
        const double x = 20.0 * i / 300.0;
        const double cur = lambert_w0(x);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("Lambert W0 domain errors") {
    CHECK_THROWS_AS(lambert_w0(-1e-9), std::domain_error);
    CHECK_THROWS_AS(lambert_w0(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(lambert_w0(std::numeric_limits<double>::infinity()), std::domain_error);
}
