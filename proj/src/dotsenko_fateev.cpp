#include "torus_blocks/dotsenko_fateev.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

#include "torus_blocks/quadrature.hpp"
#include "torus_blocks/special_functions.hpp"
#include "torus_blocks/zamolodchikov.hpp"

namespace torus_blocks {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// |Theta(x)| on (0,1), cached on first use per (q, side) via direct calls;
// theta evaluation is cheap enough to call directly inside quadratures.
double abs_theta(double x, const ModularParam& m) { return std::abs(jacobi_theta(x, m, 0)); }

Complex df_prefactor(int N, double gamma, double q) {
    const double a = -N * gamma;
    const double Q = gamma / 2.0 + 2.0 / gamma;
    const ModularParam m = ModularParam::from_real_q(q);
    const double eta = eta_norm(m).real() * std::pow(q, 1.0 / 12.0);
    const double qpow = a * a / 24.0 - a * Q / 12.0 + 1.0 / 6.0;
    const double epow = 5.0 / 4.0 * a * gamma + 2.0 * a / gamma - 5.0 / 4.0 * a * a - 2.0;
    // per-factor phase of Theta(x)^{-a g/2} under the GMC fractional-power rule
    const Complex phase = std::exp(-kI * kPi * a * gamma * static_cast<double>(N) / 2.0);
    return std::pow(q, qpow) * std::pow(eta, epow) * phase;
}

} // namespace

Complex df_integrand(double gamma, Complex P, const ModularParam& m,
                     const std::vector<double>& xs) {
    const int N = static_cast<int>(xs.size());
    const double ins = static_cast<double>(N) * gamma * gamma / 2.0;
    Complex v = 1.0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            v *= std::pow(abs_theta(xs[i] - xs[j], m), -gamma * gamma / 2.0);
    for (int i = 0; i < N; ++i)
        v *= std::pow(abs_theta(xs[i], m), ins) * std::exp(kPi * gamma * P * xs[i]);
    return v;
}

DFResult df_A_q(const DFConfig& cfg, double gamma, Complex P, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("df_A_q: q must be in (0,1)");
    const int N = cfg.N;
    if (N < 1 || N > 2) throw std::invalid_argument("df_A_q: only N = 1, 2 are supported");
    if (!(N < 4.0 / (gamma * gamma)))
        throw std::domain_error("df_A_q: N >= 4/gamma^2 (integral diverges)");
    const ModularParam m = ModularParam::from_real_q(q);
    const double a = -N * gamma;
    const double ins = -a * gamma / 2.0; // = N gamma^2 / 2 > 0

    QuadResult integral;
    if (N == 1) {
        integral = tanh_sinh_01(
            [&](double x) {
                return std::pow(abs_theta(x, m), ins) * std::exp(kPi * gamma * P * x);
            },
            cfg.quad_level);
    } else {
        // 2 int_0^1 du int_u^1 dx2 |Theta(u)|^{-g^2/2} |Theta(x2-u) Theta(x2)|^{ins}
        //                           e^{pi g P (2 x2 - u)}
        const double pair_exp = -gamma * gamma / 2.0;
        auto outer = [&](double u) -> Complex {
            const QuadResult inner = tanh_sinh(
                [&](double x2) {
                    return std::pow(abs_theta(x2 - u, m), ins) * std::pow(abs_theta(x2, m), ins) *
                           std::exp(kPi * gamma * P * (2.0 * x2 - u));
                },
                u, 1.0, cfg.quad_level);
            return std::pow(abs_theta(u, m), pair_exp) * inner.value;
        };
        integral = tanh_sinh_01(outer, cfg.quad_level);
        integral.value *= 2.0;
        integral.err_est *= 2.0;
    }
    if (integral.err_est > cfg.tolerance * std::max(1.0, std::abs(integral.value)))
        throw std::runtime_error("df_A_q: quadrature did not converge to the requested tolerance");
    return {df_prefactor(N, gamma, q) * integral.value, integral.err_est};
}

ExtractResult extract_q_coeffs(const std::function<Complex(double)>& evaluator, int K,
                               double q_max, const ExtractOptions& opts) {
    if (K < 0 || !(q_max > 0.0 && q_max < 1.0))
        throw std::invalid_argument("extract_q_coeffs: bad K or q_max");
    std::vector<int> powers;
    for (int k = 0; k <= K; ++k)
        if (!opts.even_only || k % 2 == 0) powers.push_back(k);
    const int M = (opts.nodes > 0) ? opts.nodes : 2 * (K + 1);
    if (static_cast<int>(powers.size()) > M)
        throw std::invalid_argument("extract_q_coeffs: K exceeds the node budget");

    Eigen::VectorXd qs(M);
    for (int i = 0; i < M; ++i) {
        const double t = std::cos((2.0 * i + 1.0) * kPi / (2.0 * M));
        qs(i) = q_max * (t + 1.0) / 2.0;
    }
    Eigen::MatrixXd V(M, powers.size());
    for (int i = 0; i < M; ++i)
        for (size_t c = 0; c < powers.size(); ++c) V(i, c) = std::pow(qs(i) / q_max, powers[c]);
    Eigen::VectorXcd rhs(M);
    for (int i = 0; i < M; ++i) rhs(i) = evaluator(qs(i));

    Eigen::BDCSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
    if (cond > 1e10) throw std::runtime_error("extract_q_coeffs: ill-conditioned fit");
    const Eigen::VectorXcd sol = svd.solve(rhs);

    ExtractResult out;
    out.coeffs = QSeries::zero(K);
    for (size_t c = 0; c < powers.size(); ++c)
        out.coeffs.coeff_ref(powers[c]) = sol(c) / std::pow(q_max, powers[c]);
    out.condition_number = cond;
    double resid = 0.0;
    const Eigen::VectorXcd fit = V.cast<Complex>() * sol;
    for (int i = 0; i < M; ++i) resid = std::max(resid, std::abs(fit(i) - rhs(i)));
    out.max_residual = resid;
    return out;
}

VerifyReport verify_momentum_shift(const DFConfig& cfg, double gamma, int m, int n, double q) {
    const auto t0 = std::chrono::steady_clock::now();
    const double alpha = -cfg.N * gamma;
    std::vector<std::pair<std::string, std::string>> config{
        {"N", std::to_string(cfg.N)},       {"gamma", std::to_string(gamma)},
        {"m", std::to_string(m)},           {"n", std::to_string(n)},
        {"q", std::to_string(q)},           {"quad_level", std::to_string(cfg.quad_level)},
    };
    const std::string name = "momentum-shift(" + std::to_string(m) + "," + std::to_string(n) + ")";
    if (m == 0) {
        // P_{0,n} = P_{-0,n}; the identity degenerates to 0 = 0
        return make_report(name, "df(P_{m,n})", "df(P_{-m,n})", 0.0, 0.0, 0.0, cfg.tolerance, 0,
                           std::move(config));
    }
    const Complex p_plus = p_mn({m, n}, gamma);
    const Complex p_minus = p_mn({-m, n}, gamma);
    const Complex a_plus = df_A_q(cfg, gamma, p_plus, q).value;
    const Complex a_minus = df_A_q(cfg, gamma, p_minus, q).value;
    const Complex factor =
        std::pow(q, 2.0 * n * m) * std::exp(-kI * kPi * alpha * gamma * static_cast<double>(m) / 2.0);
    const Complex rhs = factor * a_minus;
    const double residual = std::abs(a_plus - rhs) / std::max(std::abs(a_plus), std::abs(rhs));
    const auto t1 = std::chrono::steady_clock::now();
    const long ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return make_report(name, "df(P_{m,n})", "q^{2nm} e^{-i pi a g m/2} df(P_{-m,n})", a_plus, rhs,
                       residual, cfg.tolerance, ms, std::move(config));
}

} // namespace torus_blocks
