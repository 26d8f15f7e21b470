#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "torus_blocks/closed_form.hpp"
#include "torus_blocks/gmc.hpp"
#include "torus_blocks/quadrature.hpp"

using namespace torus_blocks;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex I(0.0, 1.0);

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }
} // namespace

TEST_CASE("sample_field covariances") {
    MCConfig cfg;
    cfg.n_modes = 384;
    const ModularParam m = ModularParam::from_real_q(0.3);
    const long S = 60000;

    const double x = 0.2, y = 0.55;
    double sum_xy = 0.0, sum_f2 = 0.0, sum_tt = 0.0;
    double sq_xy = 0.0, sq_f2 = 0.0, sq_tt = 0.0;
    for (long i = 0; i < S; ++i) {
        SampleRng rng(42, static_cast<std::uint64_t>(i));
        const FieldSample f = sample_field(rng, m, cfg);
        const double yx = f.y_inf(x), yy = f.y_inf(y);
        const double f0 = f.f_tau(0.0);
        const double tx = yx + f.f_tau(x), ty = yy + f.f_tau(y);
        sum_xy += yx * yy;
        sq_xy += yx * yy * yx * yy;
        sum_f2 += f0 * f0;
        sq_f2 += f0 * f0 * f0 * f0;
        sum_tt += tx * ty;
        sq_tt += tx * ty * tx * ty;
    }
    auto mean_se = [S](double s, double s2) {
        const double mean = s / S;
        const double var = s2 / S - mean * mean;
        return std::pair{mean, std::sqrt(var / S)};
    };

    // Cov(Y_inf(x), Y_inf(y)) = -2 log |2 sin(pi (x-y))|
    {
        auto [mean, se] = mean_se(sum_xy, sq_xy);
        const double target = -2.0 * std::log(std::abs(2.0 * std::sin(kPi * (x - y))));
        CHECK(std::abs(mean - target) < 4.0 * se);
    }
    // Var F_tau(0) = -4 log |q^{-1/12} eta(q)|
    {
        auto [mean, se] = mean_se(sum_f2, sq_f2);
        const double target = -4.0 * std::log(std::abs(eta_norm(m).real()));
        CHECK(std::abs(mean - target) < 4.0 * se);
    }
    // Cov(Y_tau(x), Y_tau(y)) = -2 log |Theta(x-y)| + 2 log |q^{1/6} eta(q)|
    {
        auto [mean, se] = mean_se(sum_tt, sq_tt);
        const double q = 0.3;
        const double target = -2.0 * std::log(std::abs(jacobi_theta(x - y, m, 0))) +
                              2.0 * std::log(std::abs(std::pow(q, 1.0 / 6.0) *
                                                      std::pow(q, 1.0 / 12.0) * eta_norm(m).real()));
        CHECK(std::abs(mean - target) < 4.0 * se);
    }

    CHECK_THROWS_AS(
        [&] {
            SampleRng rng(1, 0);
            return sample_field(rng, ModularParam::from_q(Complex(0.1, 0.05)), cfg);
        }(),
        std::domain_error);
}

TEST_CASE("gmc_integral normalization") {
    MCConfig cfg;
    cfg.n_modes = 64;
    cfg.grid_points = 512;
    const ModularParam m = ModularParam::from_real_q(0.2);
    auto one = [](double) { return Complex(1.0); };

    // gamma -> 0: integral reduces to the grid measure of (0,1), which is
    // 1 + O(G^{-2}) under the midpoint rule
    {
        MCConfig fine = cfg;
        fine.grid_points = 2048;
        SampleRng rng(5, 0);
        const FieldSample f = sample_field(rng, m, fine);
        const Complex v = gmc_integral(f, one, 1e-8, fine);
        CHECK(std::abs(v - 1.0) < 1e-6);
    }

    // martingale normalization: E[ integral with weight 1 ] = 1
    {
        const long S = 3000;
        double sum = 0.0, sq = 0.0;
        for (long i = 0; i < S; ++i) {
            SampleRng rng(7, static_cast<std::uint64_t>(i));
            const FieldSample f = sample_field(rng, m, cfg);
            const double v = gmc_integral(f, one, 1.0, cfg).real();
            sum += v;
            sq += v * v;
        }
        const double mean = sum / S;
        const double se = std::sqrt((sq / S - mean * mean) / S);
        CHECK(std::abs(mean - 1.0) < 4.0 * se + 2e-4);
    }
}

TEST_CASE("second moment of the cylinder GMC matches double quadrature") {
    // E[(int e^{(g/2)Y_inf} dx)^2] = 2 int_0^1 |2 sin(pi u)|^{-g^2/2} (1-u) du
    const double g = 0.5;
    MCConfig cfg;
    cfg.n_modes = 64;
    cfg.grid_points = 384;
    const ModularParam m = ModularParam::from_real_q(0.2); // q unused for cylinder field
    const long S = 6000;
    double sum = 0.0, sq = 0.0;
    auto one = [](double) { return Complex(1.0); };
    for (long i = 0; i < S; ++i) {
        SampleRng rng(19, static_cast<std::uint64_t>(i));
        const FieldSample f = sample_field(rng, m, cfg);
        const double v = gmc_integral(f, one, g, cfg, GmcField::cylinder).real();
        const double v2 = v * v;
        sum += v2;
        sq += v2 * v2;
    }
    const double mean = sum / S;
    const double se = std::sqrt((sq / S - mean * mean) / S);

    const QuadResult oracle = tanh_sinh_01(
        [&](double u) {
            return Complex(2.0 * std::pow(std::abs(2.0 * std::sin(kPi * u)), -g * g / 2.0) *
                           (1.0 - u));
        },
        8);
    CHECK(oracle.err_est < 1e-10);
    CHECK(std::abs(mean - oracle.value.real()) < 4.0 * se + 2e-3);
}

TEST_CASE("estimate_A_q at alpha = 0 is exact") {
    MCConfig cfg;
    cfg.samples = 500;
    cfg.n_modes = 32;
    cfg.grid_points = 256;
    const double q = 0.15;
    const ModularParam m = ModularParam::from_real_q(q);
    const BlockParams params(0.9, 0.5, 0.0);
    const MCEstimate e = estimate_A_q(params, m, cfg);
    const double eta = std::pow(q, 1.0 / 12.0) * eta_norm(m).real();
    CHECK(e.stderr_est == 0.0); // zeroth moment carries no MC noise
    CHECK(std::abs(e.value - std::pow(q, 1.0 / 6.0) / (eta * eta)) < 1e-13);
}

TEST_CASE("estimate_G at alpha = 0 is exact") {
    MCConfig cfg;
    cfg.samples = 500;
    cfg.n_modes = 32;
    cfg.grid_points = 256;
    const double q = 0.15;
    const ModularParam m = ModularParam::from_real_q(q);
    const BlockParams params(0.9, 0.5, 0.0);
    const MCEstimate e = estimate_G(params, m, cfg);
    const double eta = std::pow(q, 1.0 / 12.0) * eta_norm(m).real();
    CHECK(e.stderr_est == 0.0);
    CHECK(std::abs(e.value - std::pow(q, 1.0 / 12.0) / eta) < 1e-13);
}

TEST_CASE("deterministic phase of estimate_A_q") {
    MCConfig cfg;
    cfg.samples = 2000;
    cfg.n_modes = 64;
    cfg.grid_points = 512;
    const ModularParam m = ModularParam::from_real_q(0.15);
    const BlockParams params(0.8, 0.5, -0.8);
    const MCEstimate e = estimate_A_q(params, m, cfg);
    const double a = -0.8;
    // Im/Re = tan(pi alpha^2 / 2)
    CHECK(std::abs(e.value.imag() / e.value.real() - std::tan(kPi * a * a / 2.0)) < 1e-10);
}

TEST_CASE("determinism across thread counts") {
    MCConfig cfg;
    cfg.samples = 6000;
    cfg.n_modes = 64;
    cfg.grid_points = 512;
    cfg.seed = 1234;
    const ModularParam m = ModularParam::from_real_q(0.1);
    const BlockParams params(1.0, 1.0, 0.8);

    MCConfig c1 = cfg;
    c1.threads = 1;
    MCConfig c2 = cfg;
    c2.threads = 2;
    MCConfig c4 = cfg;
    c4.threads = 4;
    const MCEstimate e1 = estimate_G(params, m, c1);
    const MCEstimate e2 = estimate_G(params, m, c2);
    const MCEstimate e4 = estimate_G(params, m, c4);
    CHECK(bit_equal(e1.value.real(), e2.value.real()));
    CHECK(bit_equal(e1.value.imag(), e2.value.imag()));
    CHECK(bit_equal(e1.stderr_est, e2.stderr_est));
    CHECK(bit_equal(e1.value.real(), e4.value.real()));
    CHECK(bit_equal(e1.value.imag(), e4.value.imag()));
    CHECK(bit_equal(e1.stderr_est, e4.stderr_est));
}

TEST_CASE("mode-truncation stability of estimate_G") {
    MCConfig base;
    base.samples = 20000;
    base.grid_points = 1024;
    base.seed = 77;
    const ModularParam m = ModularParam::from_real_q(0.1);
    const BlockParams params(1.0, 1.0, 0.8);

    MCConfig cfg1 = base;
    cfg1.n_modes = 128;
    MCConfig cfg2 = base;
    cfg2.n_modes = 256;
    const MCEstimate e1 = estimate_G(params, m, cfg1);
    const MCEstimate e2 = estimate_G(params, m, cfg2);
    const double combined = std::hypot(e1.stderr_est, e2.stderr_est);
    CHECK(std::abs(e1.value - e2.value) < 2.0 * combined);
}

TEST_CASE("small-q limit of the normalized block") {
    // A^q / A_0 -> 1 as q -> 0
    MCConfig cfg;
    cfg.samples = 20000;
    cfg.n_modes = 64;
    cfg.grid_points = 1024;
    const double q = 0.02;
    const ModularParam m = ModularParam::from_real_q(q);
    const BlockParams params(0.8, 0.5, -0.8);
    const MCEstimate aq = estimate_A_q(params, m, cfg);
    const Complex ratio = aq.value / a0_closed(params);
    const double se = aq.stderr_est / std::abs(a0_closed(params));
    CHECK(std::abs(ratio - 1.0) < 3.0 * se + 1e-3);
}

TEST_CASE("reflected extension") {
    const double g = 1.0;
    const double Q = g / 2.0 + 2.0 / g;
    const ModularParam m = ModularParam::from_real_q(0.1);

    // prefactor finite on an alpha grid inside (Q + 0.1, 2Q - 0.1)
    // the grid dodges the isolated points where the factored form hits an
    // intermediate gamma pole cancelled by a zero of the reflection coefficient
    for (double a = Q + 0.13; a < 2.0 * Q - 0.1; a += 0.275) {
        const BlockParams params(g, 0.4, a);
        const Complex pref = reflected_prefactor(params, m);
        CHECK(std::isfinite(std::abs(pref)));
    }

    // two-path prefactor re-evaluation at alpha = Q + 0.9
    {
        const double a = Q + 0.9, P = 0.4;
        const BlockParams params(g, P, a);
        const Complex direct = reflected_prefactor(params, m);
        const double q = 0.1;
        const double eta = std::pow(q, 1.0 / 12.0) * eta_norm(m).real();
        const double theta_p = -jacobi_theta(0.0, m, 1).real(); // = 2 pi eta^3 > 0
        Complex rebuilt = -std::exp(std::log(q) * (1.0 - a / g - Q * (Q + g / 2.0 - a)) / 6.0);
        rebuilt *= std::exp(std::log(eta) * (3.0 * a * g / 2.0 + 2.0 * a / g - 2.0 -
                                             3.0 * a * a / 2.0 + (Q + g / 2.0 - a) * (3.0 * a - 4.0 * Q)));
        const double tp_pow = (Q - a) * (g - a);
        rebuilt *= std::exp(std::log(theta_p) * tp_pow) * std::exp(I * kPi * tp_pow);
        rebuilt *= std::exp(I * kPi * (a * g / 2.0 - (a - g / 2.0 - Q) * (a - 2.0 * Q)));
        rebuilt *= std::exp(std::log(2.0 * kPi) * (a - g / 2.0 - Q) * (Q - a));
        rebuilt /= (1.0 - a / g) *
                   (1.0 - std::exp(kPi * g * P - I * kPi * g * g / 2.0 + I * kPi * a * g / 2.0));
        rebuilt *= gamma_complex(Complex(-g * g / 4.0)) *
                   gamma_complex(Complex(2.0 * a / g - 1.0 - 4.0 / (g * g))) *
                   gamma_complex(Complex(1.0 + 4.0 / (g * g) - a / g)) /
                   (gamma_complex(Complex(a * g / 2.0 - 1.0 - g * g / 2.0)) *
                    gamma_complex(Complex(1.0 + g * g / 4.0 - a * g / 2.0)) *
                    gamma_complex(Complex(a / g - 1.0)));
        rebuilt *= reflection_coeff(a - g / 2.0, g / 2.0, P, g);
        CHECK(std::abs(direct - rebuilt) < 1e-10 * std::abs(rebuilt));
    }

    // out-of-range flags
    MCConfig cfg;
    cfg.samples = 100;
    cfg.n_modes = 16;
    cfg.grid_points = 128;
    CHECK_THROWS_AS(estimate_reflected_A(BlockParams(g, 0.4, Q - 0.1), m, cfg), std::domain_error);
    {
        // alpha = 2Q - 0.01 at gamma = 1.8: the Gamma(1 + 4/g^2 - a/g) factor sits
        // within 0.006 of its pole and is rejected
        const double g18 = 1.8;
        const double Q18 = g18 / 2.0 + 2.0 / g18;
        CHECK_THROWS_AS(
            estimate_reflected_A(BlockParams(g18, 0.4, 2.0 * Q18 - 0.01),
                                 ModularParam::from_real_q(0.1), cfg),
            std::domain_error);
    }

    // a small-sample estimate runs and returns a finite value
    {
        MCConfig run_cfg;
        run_cfg.samples = 2000;
        run_cfg.n_modes = 64;
        run_cfg.grid_points = 512;
        const BlockParams params(g, 0.4, Q + 0.9);
        const MCEstimate e = estimate_reflected_A(params, m, run_cfg);
        CHECK(std::isfinite(std::abs(e.value)));
        CHECK(std::isfinite(e.stderr_est));
    }
}
