#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "selfple/special.hpp"

using namespace selfple;

TEST_CASE("log_gamma matches the series oracle and frozen constants") {
    CHECK(special::log_gamma(0.5) == doctest::Approx(oracles::kLnGammaHalf).epsilon(1e-12));
    CHECK(std::abs(special::log_gamma(1.0)) < 1e-13);
    CHECK(std::abs(special::log_gamma(2.0)) < 1e-13);
    for (double x : {0.1, 0.37, 1.5, 2.25, 3.0, 5.5, 10.0, 25.0, 123.4, 1500.0, 2.4e4}) {
        const double expected = oracles::log_gamma(x);
        CHECK(special::log_gamma(x) == doctest::Approx(expected).epsilon(1e-10));
    }
    // Gamma(n) = (n-1)! for small integers.
    CHECK(std::exp(special::log_gamma(5.0)) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(std::exp(special::log_gamma(7.0)) == doctest::Approx(720.0).epsilon(1e-12));
}

TEST_CASE("digamma matches the series oracle and frozen constants") {
    CHECK(special::digamma(1.0) == doctest::Approx(-oracles::kEulerGamma).epsilon(1e-10));
    // psi(1/2) = -gamma - 2 ln 2.
    const double psi_half = -oracles::kEulerGamma - 2.0 * std::log(2.0);
    CHECK(special::digamma(0.5) == doctest::Approx(psi_half).epsilon(1e-10));
    for (double x : {0.2, 0.9, 1.0, 2.7, 4.0, 9.9, 42.0, 777.0}) {
        CHECK(special::digamma(x) == doctest::Approx(oracles::digamma(x)).epsilon(1e-10));
    }
    // Recurrence psi(x+1) = psi(x) + 1/x.
    for (double x : {0.3, 1.7, 8.5}) {
        CHECK(special::digamma(x + 1.0) ==
              doctest::Approx(special::digamma(x) + 1.0 / x).epsilon(1e-12));
    }
    CHECK_THROWS_AS(special::digamma(0.0), std::invalid_argument);
    CHECK_THROWS_AS(special::digamma(-1.5), std::invalid_argument);
}

TEST_CASE("beta function agrees with the gamma identity") {
    CHECK(special::beta(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(special::beta(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(special::beta(0.5, 0.5) == doctest::Approx(3.14159265358979323846).epsilon(1e-12));
}

TEST_CASE("incomplete beta endpoints, symmetry and closed forms") {
    CHECK(special::incomplete_beta(3.0, 4.0, 0.0) == 0.0);
    CHECK(special::incomplete_beta(3.0, 4.0, 1.0) == 1.0);
    // I_x(1, b) = 1 - (1-x)^b.
    for (double x : {0.1, 0.35, 0.8}) {
        CHECK(special::incomplete_beta(1.0, 5.0, x) ==
              doctest::Approx(1.0 - std::pow(1.0 - x, 5.0)).epsilon(1e-12));
    }
    // Symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
    for (double x : {0.2, 0.5, 0.77}) {
        CHECK(special::incomplete_beta(2.5, 4.5, x) ==
              doctest::Approx(1.0 - special::incomplete_beta(4.5, 2.5, 1.0 - x)).epsilon(1e-12));
    }
    // Quadrature cross-check on an awkward shape.
    const double a = 2.25, b = 6.5, x = 0.31;
    const double direct = oracles::integrate(
        [&](double t) { return std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0); }, 0.0, x, 1e-13);
    CHECK(special::incomplete_beta(a, b, x) ==
          doctest::Approx(direct / special::beta(a, b)).epsilon(1e-9));
}

TEST_CASE("incomplete gamma matches erf and complements") {
    // P(1/2, x) = erf(sqrt(x)).
    for (double x : {0.01, 0.5, 2.0, 9.0}) {
        CHECK(special::incomplete_gamma_p(0.5, x) ==
              doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
    }
    // P(1, x) = 1 - exp(-x).
    for (double x : {0.2, 3.0}) {
        CHECK(special::incomplete_gamma_p(1.0, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-12));
    }
    for (double a : {0.7, 2.0, 8.0}) {
        for (double x : {0.3, 2.0, 11.0}) {
            CHECK(special::incomplete_gamma_p(a, x) + special::incomplete_gamma_q(a, x) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("normal quantile round-trips the cdf") {
    CHECK(special::normal_quantile(0.975) == doctest::Approx(oracles::kZ975).epsilon(1e-12));
    CHECK(special::normal_quantile(0.5) == doctest::Approx(0.0));
    for (double p : {1e-6, 0.01, 0.2, 0.5, 0.9, 0.995, 1.0 - 1e-9}) {
        CHECK(special::normal_cdf(special::normal_quantile(p)) == doctest::Approx(p).epsilon(1e-11));
    }
    CHECK_THROWS_AS(special::normal_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(special::normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("chi-square(1) upper quantile at 5% is the squared 1.96 rule") {
    const double q = special::chi_square1_upper_quantile(0.05);
    CHECK(q == doctest::Approx(oracles::kZ975 * oracles::kZ975).epsilon(1e-12));
    CHECK(q == doctest::Approx(3.84).epsilon(0.002)); // the rounded critical value
}
