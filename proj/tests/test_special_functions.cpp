#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "torus_blocks/qseries.hpp"
#include "torus_blocks/special_functions.hpp"

using namespace torus_blocks;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex I(0.0, 1.0);

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }
} // namespace

TEST_CASE("gamma basics") {
    CHECK(rel(gamma_complex(1.0), 1.0) < 1e-14);
    CHECK(rel(gamma_complex(0.5), std::sqrt(kPi)) < 1e-14);
    CHECK(rel(gamma_complex(6.0), 120.0) < 1e-13);
    CHECK_THROWS_AS(gamma_complex(Complex(-3.0, 0.0)), std::domain_error);

    // Legendre duplication at z = 0.7 + 0.3i
    const Complex z(0.7, 0.3);
    const Complex lhs = gamma_complex(2.0 * z);
    const Complex rhs = std::pow(2.0, 2.0 * z - 1.0) / std::sqrt(kPi) * gamma_complex(z) *
                        gamma_complex(z + 0.5);
    CHECK(rel(lhs, rhs) < 1e-12);

    // reflection region
    const Complex w(-2.3, 1.1);
    CHECK(rel(gamma_complex(w) * gamma_complex(1.0 - w), kPi / std::sin(kPi * w)) < 1e-12);
    CHECK(rel(rgamma_complex(w), 1.0 / gamma_complex(w)) < 1e-13);
}

TEST_CASE("gamma matches Stirling at |z| = 30") {
    for (double arg : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const Complex z = 30.0 * std::exp(I * arg);
        const Complex stirling = std::sqrt(2.0 * kPi / z) * std::exp(-z) * std::pow(z, z);
        CHECK(std::abs(std::abs(gamma_complex(z)) / std::abs(stirling) - 1.0) < 0.01);
    }
}

TEST_CASE("double gamma special value and shift equation") {
    for (double g : {0.8, 1.0, 1.5}) {
        const double Q = g / 2.0 + 2.0 / g;
        CHECK(std::abs(double_gamma(Complex(Q / 2.0), g) - 1.0) < 1e-8);
    }
    for (double g : {0.8, 1.0, 1.5}) {
        for (double chi : {g / 2.0, 2.0 / g}) {
            const Complex z(1.1, 0.0);
            const Complex lhs = double_gamma(z + chi, g);
            const Complex rhs = std::sqrt(2.0 * kPi) * std::pow(chi, chi * z - 0.5) /
                                gamma_complex(chi * z) * double_gamma(z, g);
            CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
        }
    }
    // both arguments inside the direct integral region: tests the quadrature itself
    {
        const double g = 1.0, chi = 0.5;
        const Complex z(1.5, 0.4);
        const Complex lhs = double_gamma(z + chi, g);
        const Complex rhs = std::sqrt(2.0 * kPi) * std::pow(chi, chi * z - 0.5) /
                            gamma_complex(chi * z) * double_gamma(z, g);
        CHECK(rel(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("double gamma simple pole at z = 0") {
    const double g = 1.3;
    const Complex c1 = 1e-3 * double_gamma(Complex(1e-3), g);
    const Complex c2 = 1e-4 * double_gamma(Complex(1e-4), g);
    CHECK(std::abs(c1 - c2) < 2e-3 * std::abs(c2));
    CHECK_THROWS_AS(double_gamma(Complex(0.0), g), std::domain_error);
    // lattice pole at -gamma/2
    CHECK_THROWS_AS(double_gamma(Complex(-g / 2.0), g), std::domain_error);
}

TEST_CASE("s_gamma") {
    const double g = 1.0;
    const double Q = g / 2.0 + 2.0 / g;
    CHECK(std::abs(s_gamma(Complex(Q / 2.0), g) - 1.0) < 1e-10);
    const Complex z(0.9, 0.0);
    CHECK(rel(s_gamma(z, g) * s_gamma(Q - z, g), 1.0) < 1e-10);
    const Complex z2(1.2, 0.0);
    CHECK(rel(s_gamma(z2, g), double_gamma(z2, g) / double_gamma(Q - z2, g)) < 1e-12);
}

TEST_CASE("theta values, derivatives and symmetries") {
    const ModularParam m = ModularParam::from_real_q(0.1);
    CHECK(std::abs(jacobi_theta(0.0, m, 0)) == 0.0);

    // Theta'(0) = -2 pi q^{1/4} prod (1-q^{2k})^3
    double p0 = 1.0;
    for (int k = 1; k <= 30; ++k) p0 *= 1.0 - std::pow(0.1, 2 * k);
    const Complex tp0 = jacobi_theta(0.0, m, 1);
    CHECK(rel(tp0, -2.0 * kPi * std::pow(0.1, 0.25) * p0 * p0 * p0) < 1e-12);

    const ModularParam m15 = ModularParam::from_real_q(0.15);
    const Complex u(0.3, 0.2);
    CHECK(rel(jacobi_theta(u + 1.0, m15, 0), -jacobi_theta(u, m15, 0)) < 1e-13);
    CHECK(rel(jacobi_theta(1.0 - 0.37, m15, 0), jacobi_theta(0.37, m15, 0)) < 1e-13);
}

TEST_CASE("theta heat equation") {
    const double q = 0.2;
    const double t = -std::log(q) / kPi;
    const Complex u(0.233, 0.1);
    const double h = 1e-5;
    const Complex up = jacobi_theta(u, ModularParam::from_tau(Complex(h, t)), 0);
    const Complex um = jacobi_theta(u, ModularParam::from_tau(Complex(-h, t)), 0);
    const Complex dtau = (up - um) / (2.0 * h);
    const Complex rhs = jacobi_theta(u, ModularParam::from_tau(Complex(0.0, t)), 2) / 4.0;
    CHECK(std::abs(I * kPi * dtau - rhs) < 1e-6);
}

TEST_CASE("theta log-derivative identity on a random grid") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ur(0.1, 0.8), ui(-0.15, 0.15);
    for (double q : {0.1, 0.2, 0.3}) {
        const ModularParam m = ModularParam::from_real_q(q);
        const Complex c3 = theta_triple_prime_ratio(m);
        for (int rep = 0; rep < 8; ++rep) {
            const Complex a(ur(rng), ui(rng));
            const Complex b(ur(rng), ui(rng));
            if (std::abs(std::sin(kPi * (a - b))) < 0.2) continue;
            auto L = [&](Complex u, int d) { return jacobi_theta(u, m, d) / jacobi_theta(u, m, 0); };
            const Complex lhs = L(a - b, 2) + L(a, 2) + L(b, 2) -
                                2.0 * L(a - b, 1) * (L(a, 1) - L(b, 1)) - 2.0 * L(a, 1) * L(b, 1) - c3;
            CHECK(std::abs(lhs) < 1e-10 * (1.0 + std::abs(c3)));
        }
    }
}

TEST_CASE("dedekind eta consistency with the series") {
    const QSeries ens = eta_norm_series(48);
    for (double q : {0.05, 0.2, 0.45}) {
        const ModularParam m = ModularParam::from_real_q(q);
        const Complex eta_fn = dedekind_eta(m);
        const Complex eta_series = std::pow(q, 1.0 / 12.0) * ens.eval(Complex(q));
        CHECK(rel(eta_fn, eta_series) < 1e-12);
    }
}

TEST_CASE("fractional powers of theta") {
    const ModularParam m = ModularParam::from_real_q(0.2);
    // on (0,1) with q in (0,1): Theta^c = e^{+i c pi} |Theta|^c (Im log Theta = +pi there)
    const double x = 0.4, c = 0.7;
    const Complex expected =
        std::exp(I * c * kPi) * std::pow(std::abs(jacobi_theta(x, m, 0)), c);
    CHECK(rel(theta_frac_pow(x, c, m), expected) < 1e-12);

    // c = 1 agrees with the theta value itself
    CHECK(rel(theta_frac_pow(x, 1.0, m), jacobi_theta(x, m, 0)) < 1e-12);
    const Complex u(0.3, 0.1);
    CHECK(rel(theta_frac_pow(u, 1.0, m), jacobi_theta(u, m, 0)) < 1e-12);

    // shift by 1: Theta(u+1)^c = e^{-i pi c} Theta(u)^c
    const Complex us(0.3, 0.2);
    const ModularParam m15 = ModularParam::from_real_q(0.15);
    CHECK(rel(theta_frac_pow(us + 1.0, 0.5, m15),
              std::exp(-I * kPi * 0.5) * theta_frac_pow(us, 0.5, m15)) < 1e-11);

    // shift by tau: Theta(u+tau)^c / Theta(u)^c = e^{-2 pi i c (u - 1/2 + tau/2)}
    const Complex u0(0.3, 0.0);
    const double cc = 0.5;
    const Complex ratio = theta_frac_pow(u0 + m.tau, cc, m) / theta_frac_pow(u0, cc, m);
    const Complex expected_ratio = std::exp(-2.0 * kPi * I * cc * (u0 - 0.5 + m.tau / 2.0));
    CHECK(rel(ratio, expected_ratio) < 1e-10);
}

TEST_CASE("weierstrass p") {
    // q -> 0 limit: pi^2/sin^2(pi u) - pi^2/3
    {
        const ModularParam m = ModularParam::from_real_q(1e-9);
        const Complex u(0.3, 0.0);
        const Complex limit = kPi * kPi / std::pow(std::sin(kPi * u), 2) - kPi * kPi / 3.0;
        CHECK(rel(weierstrass_p(u, m, WpRoute::series), limit) < 1e-12);
    }
    {
        const ModularParam m = ModularParam::from_real_q(0.15);
        const Complex u(0.25, 0.1);
        CHECK(rel(weierstrass_p(-u, m, WpRoute::series), weierstrass_p(u, m, WpRoute::series)) <
              1e-12);
    }
    {
        const ModularParam m = ModularParam::from_real_q(0.1);
        const Complex u(0.3, 0.1);
        const Complex a = weierstrass_p(u, m, WpRoute::theta);
        const Complex b = weierstrass_p(u, m, WpRoute::series);
        CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(b)));
    }
    // small grid of two-route checks
    for (double q : {0.05, 0.2}) {
        const ModularParam m = ModularParam::from_real_q(q);
        for (double x : {0.2, 0.45, 0.7}) {
            const Complex u(x, 0.05);
            const Complex a = weierstrass_p(u, m, WpRoute::theta);
            const Complex b = weierstrass_p(u, m, WpRoute::series);
            CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(b)));
        }
    }
}

TEST_CASE("wp_poly") {
    CHECK(wp_poly(1).empty());
    CHECK(wp_poly(3).empty());
    const auto p2 = wp_poly(2);
    REQUIRE(p2.size() == 2);
    CHECK(std::abs(p2[0]) < 1e-12);
    CHECK(std::abs(p2[1] - 16.0 * kPi * kPi) < 1e-10);

    // direct series-expansion oracle at order q^4:
    //   wp_4(u) = -8 pi^2 (cos 2 pi u + 2 cos 4 pi u) + 24 pi^2
    const auto p4 = wp_poly(4);
    REQUIRE(p4.size() == 3);
    for (double x : {0.13, 0.37, 0.62}) {
        const double w = std::pow(std::sin(kPi * x), 2);
        double val = 0.0;
        for (size_t k = 0; k < p4.size(); ++k) val += p4[k] * std::pow(w, static_cast<double>(k));
        const double oracle =
            -8.0 * kPi * kPi * (std::cos(2.0 * kPi * x) + 2.0 * std::cos(4.0 * kPi * x)) +
            24.0 * kPi * kPi;
        CHECK(std::abs(val - oracle) < 1e-10);
    }

    // cross-check the q-expansion against weierstrass_p at small q
    const double q = 0.05;
    const ModularParam m = ModularParam::from_real_q(q);
    for (double x : {0.21, 0.43}) {
        const double w = std::pow(std::sin(kPi * x), 2);
        Complex acc = kPi * kPi / w - kPi * kPi / 3.0;
        for (int n = 2; n <= 4; n += 2) {
            const auto poly = wp_poly(n);
            double val = 0.0;
            for (size_t k = 0; k < poly.size(); ++k) val += poly[k] * std::pow(w, static_cast<double>(k));
            acc += val * std::pow(q, n);
        }
        CHECK(std::abs(acc - weierstrass_p(x, m, WpRoute::series)) < 2e-5); // O(q^6) truncation
    }
}

TEST_CASE("reflection coefficient") {
    const double g = 1.0;
    const double Q = g / 2.0 + 2.0 / g;

    // the explicit 1/(Q-alpha) factor is cancelled by the double-gamma pole of
    // Gamma_{g/2}(Q-alpha): R-bar tends to 1 (unit two-point normalization) as
    // alpha -> Q, and alpha = Q itself sits on the pole lattice
    CHECK(std::abs(reflection_coeff(Q - 1e-4, g / 2.0, 0.4, g) - 1.0) < 2e-3);
    CHECK(std::abs(reflection_coeff(Q - 1e-5, g / 2.0, 0.4, g) - 1.0) < 2e-4);
    CHECK_THROWS_AS(reflection_coeff(Q, g / 2.0, 0.4, g), std::domain_error);

    // ratio identity from the OPE gluing computation at gamma = 1, alpha = 2.2, P = 0.5
    {
        const double a = 2.2, P = 0.5;
        const Complex lhs = reflection_coeff(a, 2.0 / g, P, g) /
                            reflection_coeff(a + 2.0 / g - g / 2.0, g / 2.0, P, g);
        const Complex rhs =
            2.0 / (g * (Q - a)) * std::pow(2.0 * kPi, 4.0 / (g * g) - 1.0) *
            gamma_complex(Complex(2.0 * a / g)) * gamma_complex(Complex(1.0 - 2.0 * a / g)) /
            (std::pow(gamma_complex(Complex(1.0 - g * g / 4.0)), 4.0 / (g * g) - 1.0) *
             gamma_complex(Complex(g * a / 2.0 - g * g / 2.0)) *
             gamma_complex(Complex(1.0 - g * a / 2.0 + g * g / 4.0))) *
            (1.0 - std::exp(4.0 * kPi * P / g - 4.0 * kPi * I / (g * g) + 2.0 * kPi * I * a / g)) /
            (1.0 + std::exp(kPi * g * P - I * kPi * g * g / 2.0 + I * kPi * g * a / 2.0));
        CHECK(rel(lhs, rhs) < 1e-8);
    }

    // two-path evaluation from primitives at (alpha, chi, P, gamma) = (2.0, g/2, 0.3, 1.0)
    {
        const double a = 2.0, P = 0.3, chi = g / 2.0;
        const Complex direct = reflection_coeff(a, chi, P, g);
        const Complex qa = Q - a;
        const Complex rebuilt =
            std::pow(2.0 * kPi, 2.0 / g * qa - 0.5) * std::pow(2.0 / g, g / 2.0 * qa - 0.5) /
            (qa * std::pow(gamma_complex(Complex(1.0 - g * g / 4.0)), 2.0 / g * qa)) *
            double_gamma(a - g / 2.0, g) * std::exp(-I * kPi * (chi / 2.0 + I * P) * qa) /
            (double_gamma(qa, g) *
             (double_gamma(a / 2.0 + chi / 2.0 + I * P, g) /
              double_gamma(Q - a / 2.0 - chi / 2.0 - I * P, g)) *
             (double_gamma(a / 2.0 - chi / 2.0 - I * P, g) /
              double_gamma(Q - a / 2.0 + chi / 2.0 + I * P, g)));
        CHECK(rel(direct, rebuilt) < 1e-10);
    }
}
