#include "doctest.h"
#include "zetalab/zeta.hpp"

#include <cmath>
#include <complex>

using namespace zetalab;

namespace {

// Independent oracle for theta: Im log Gamma(1/4 + it/2) - (t/2) log pi,
// with log Gamma from the Stirling series (valid here since |z| >= 5).
double theta_oracle(double t) {
    std::complex<double> z(0.25, 0.5 * t);
    // Bernoulli numbers B_2 .. B_16 over (2k)(2k-1)
    static const double b[] = {
        1.0 / 12.0,  -1.0 / 360.0,       1.0 / 1260.0,   -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,    -3617.0 / 122400.0,
    };
    std::complex<double> lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
    std::complex<double> zp = z;
    for (int k = 0; k < 8; ++k) {
        lg += b[k] / zp;
        zp *= z * z;
    }
    return lg.imag() - 0.5 * t * std::log(kPi);
}

// Independent zeta oracle via the eta series with Cohen–Rodriguez–Zagier
// acceleration of the alternating sum.  Reliable for modest t on sigma = 1/2.
std::complex<double> zeta_oracle(double t) {
    const int n = 60;
    std::complex<double> s(0.5, t);
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d;
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        acc += c * std::exp(-s * std::log(double(k + 1)));
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
    }
    std::complex<double> eta = acc / d;
    return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

} // namespace

TEST_CASE("theta matches the log-Gamma oracle") {
    for (double t : {10.0, 17.8455995405, 50.0, 100.0, 1000.0, 1.0e4, 1.0e5}) {
        double got = theta(t);
        double want = theta_oracle(t);
        CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("theta derivative") {
    // At t = 2*pi*e the leading term (1/2) log(t / 2pi) equals exactly 1/2.
    double t = kTwoPi * std::exp(1.0);
    CHECK(theta_derivative(t) == doctest::Approx(0.5).epsilon(1e-3));

    // Central finite difference oracle at t = 1000.
    double h = 1e-4;
    double fd = (theta(1000.0 + h) - theta(1000.0 - h)) / (2.0 * h);
    CHECK(std::abs(theta_derivative(1000.0) - fd) < 1e-6);

    // Positive and increasing in t on the working range.
    double prev = theta_derivative(20.0);
    for (double u = 40.0; u <= 2000.0; u *= 2.0) {
        double cur = theta_derivative(u);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("theta domain checks") {
    CHECK_THROWS_AS(theta(5.0), DomainError);
    CHECK_THROWS_AS(theta_derivative(0.0), DomainError);
}

TEST_CASE("Euler-Maclaurin zeta agrees with the eta-series oracle") {
    for (double t : {10.0, 14.1347251417, 20.0, 25.0, 30.0}) {
        auto got = detail::zeta_euler_maclaurin(t);
        auto want = zeta_oracle(t);
        CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("Riemann-Siegel Z against the Euler-Maclaurin route") {
    ZetaEvalConfig cfg;
    cfg.correction_order = 6;
    double worst = 0.0;
    for (int i = 0; i < 400; ++i) {
        double t = 10.0 + (200.0 - 10.0) * i / 399.0;
        double a = riemann_siegel_Z(t, cfg);
        double b = riemann_siegel_Z_em(t);
        worst = std::max(worst, std::abs(a - b));
    }
    CHECK(worst <= 1e-5);
}

TEST_CASE("Z vanishes at the first zero and is positive at the first Gram point") {
    CHECK(std::abs(riemann_siegel_Z(14.1347251417)) <= 1e-4);
    CHECK(riemann_siegel_Z(17.8455995405) > 0.0);
}

TEST_CASE("modulus identity |zeta(1/2+it)|^2 = Z(t)^2") {
    for (double t : {12.0, 33.3, 77.7, 150.0, 1234.5}) {
        double z = riemann_siegel_Z(t);
        CHECK(zeta_mod_sq(t) == doctest::Approx(z * z).epsilon(1e-12));
        CHECK(zeta_mod_sq(t) >= 0.0);
    }
}

TEST_CASE("zeta_half_line modulus matches |Z| on the EM range") {
    for (double t : {15.0, 40.0, 90.0}) {
        double m = std::abs(zeta_half_line(t));
        CHECK(m == doctest::Approx(std::abs(riemann_siegel_Z_em(t))).epsilon(1e-9));
    }
}

TEST_CASE("growth sanity: |Z(t)| / t^{1/6} stays modest") {
    for (double t = 100.0; t <= 1.0e5; t *= 10.0) {
        for (int j = 0; j < 50; ++j) {
            double u = t * (1.0 + j / 50.0);
            CHECK(std::abs(riemann_siegel_Z(u)) / std::pow(u, 1.0 / 6.0) < 20.0);
        }
    }
}

TEST_CASE("config validation") {
    ZetaEvalConfig cfg;
    cfg.correction_order = -1;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.correction_order = 4;
    cfg.t_min = -3.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    CHECK_THROWS_AS(riemann_siegel_Z(5.0), DomainError);
    CHECK_THROWS_AS(zeta_mod_sq(9.99), DomainError);
}
