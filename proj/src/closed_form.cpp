#include "torus_blocks/closed_form.hpp"

#include <cmath>
#include <numbers>

#include "torus_blocks/hypergeometric.hpp"
#include "torus_blocks/special_functions.hpp"

namespace torus_blocks {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

bool chi_is_2_over_gamma(double chi, double gamma) {
    return std::abs(chi - 2.0 / gamma) < 1e-12;
}
} // namespace

Complex two_pi_eipi_pow(Complex x) {
    return std::pow(2.0 * kPi, x) * std::exp(kI * kPi * x);
}

Complex a0_closed(const BlockParams& params) {
    const double g = params.gamma;
    const double Q = params.Q();
    const Complex a = params.alpha;
    const Complex P = params.P;
    const Complex pref = std::exp(kI * kPi * a * a / 2.0) * std::pow(Complex(g / 2.0), g * a / 4.0) *
                         std::exp(-kPi * a * P / 2.0) *
                         std::pow(gamma_complex(Complex(1.0 - g * g / 4.0)), a / g);
    const Complex r1 = double_gamma(Q - a / 2.0, g) / double_gamma(Q - a, g);
    const Complex r2 = double_gamma(2.0 / g + a / 2.0, g) / double_gamma(Complex(2.0 / g), g);
    const Complex r3 = double_gamma(Q - a / 2.0 - kI * P, g) / double_gamma(Q - kI * P, g);
    const Complex r4 = double_gamma(Q - a / 2.0 + kI * P, g) / double_gamma(Q + kI * P, g);
    return pref * r1 * r2 * r3 * r4;
}

Complex a0_integer_N(int N, double gamma, Complex P) {
    if (N < 1) throw std::invalid_argument("a0_integer_N: N must be >= 1");
    const double g2 = gamma * gamma;
    const double dN = static_cast<double>(N);
    Complex acc = std::exp(kI * kPi * g2 * dN * dN / 2.0) * std::exp(kPi * gamma * P * dN / 2.0) *
                  std::pow(gamma_complex(Complex(1.0 - g2 / 4.0)), -dN);
    for (int j = 1; j <= N; ++j) {
        acc *= gamma_complex(Complex(1.0 - j * g2 / 4.0));
        acc *= gamma_complex(Complex(1.0 + (2.0 * N - j + 1.0) * g2 / 4.0));
        acc *= rgamma_complex(1.0 + j * g2 / 4.0 + kI * gamma * P / 2.0);
        acc *= rgamma_complex(1.0 + j * g2 / 4.0 - kI * gamma * P / 2.0);
    }
    return acc;
}

Complex y0(Complex alpha, double chi, const BlockParams& params) {
    const double g = params.gamma;
    const Complex P = params.P;
    const Complex l = chi * chi / 2.0 - alpha * chi / 2.0;
    Complex y = std::exp(4.0 * kI * kPi * l - 2.0 * kI * kPi * chi * chi) * std::exp(kPi * chi * P) *
                std::pow(gamma_complex(Complex(1.0 - g * g / 4.0)), -2.0 * chi / g);
    y *= gamma_complex(2.0 * chi / g - l) * gamma_complex(1.0 + 2.0 * l - chi * chi) *
         gamma_complex(1.0 + 2.0 * l);
    y *= rgamma_complex(1.0 + l) * rgamma_complex(1.0 + l - kI * chi * P) *
         rgamma_complex(1.0 + l + kI * chi * P);
    if (chi_is_2_over_gamma(chi, g)) y *= 4.0 / (g * g);
    return y;
}

Complex w_minus(const BlockParams& params, double chi) {
    const double g = params.gamma;
    const Complex l = params.l_chi(chi);
    return std::pow(Complex(kPi), l) *
           two_pi_eipi_pow(-(2.0 + 2.0 * g * l / chi + 4.0 * l / (chi * g) +
                             6.0 * l * l / (chi * chi)) /
                           3.0);
}

Complex w_plus(const BlockParams& params, double chi) {
    const double g = params.gamma;
    const double Q = params.Q();
    const Complex a = params.alpha;
    const Complex P = params.P;
    const Complex l = params.l_chi(chi);

    Complex wp = -std::exp(2.0 * kI * kPi * l - 2.0 * kI * kPi * chi * chi);
    wp *= two_pi_eipi_pow(-(g * l / chi + 2.0 * l / (chi * chi) - 8.0 * l + 6.0 * l * l / (chi * chi)) /
                          3.0);
    wp *= std::pow(Complex(kPi), -l - 1.0);
    wp *= (1.0 - std::exp(2.0 * kPi * chi * P - 2.0 * kI * kPi * l)) / (chi * (Q - a));
    if (chi_is_2_over_gamma(chi, g)) wp *= 4.0 / (g * g);
    wp *= gamma_complex(a * chi / 2.0 - chi * chi / 2.0 + 2.0 * chi / g) *
          gamma_complex(1.0 - a * chi) * gamma_complex(a * chi - chi * chi);
    wp *= rgamma_complex(a * chi / 2.0 - chi * chi / 2.0) *
          std::pow(gamma_complex(Complex(1.0 - g * g / 4.0)), -2.0 * chi / g);
    return wp;
}

std::pair<Complex, Complex> w_pm(const BlockParams& params, double chi) {
    return {w_minus(params, chi), w_plus(params, chi)};
}

EtaPmSeries eta_pm_series(const BlockParams& params, double chi, int K) {
    const Complex l = params.l_chi(chi);
    const Complex L = l * (l + 1.0) / (chi * chi);
    const Complex pm = 4.0 * L / 3.0 + 2.0 * l / 3.0 + 2.0 / 3.0;
    const Complex pp = 4.0 * L / 3.0 - 2.0 * l / 3.0;
    EtaPmSeries out;
    out.eta_minus = scale(pow_complex(eta_norm_series(K), 3.0 * pm), two_pi_eipi_pow(pm));
    out.eta_plus = scale(pow_complex(eta_norm_series(K), 3.0 * pp), two_pi_eipi_pow(pp));
    return out;
}

ShiftConstants shift_constants(const BlockParams& params, double chi, int K) {
    ShiftConstants sc;
    sc.chi = chi;
    sc.l_chi = params.l_chi(chi);
    auto [wm, wp] = w_pm(params, chi);
    sc.w_minus = wm;
    sc.w_plus = wp;
    auto [g1, g2] = connection_coeffs(hgf_level(params, chi, 0));
    sc.gamma01 = g1;
    sc.gamma02 = g2;
    sc.eta = eta_pm_series(params, chi, K);
    return sc;
}

} // namespace torus_blocks
