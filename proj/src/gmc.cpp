#include "torus_blocks/gmc.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "torus_blocks/closed_form.hpp"

namespace torus_blocks {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace

int resolve_threads(const MCConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("TORUS_BLOCKS_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index) {
    // derive a well-separated stream key from (seed, index)
    std::uint64_t s = seed;
    std::uint64_t k1 = splitmix64(s);
    s ^= index * 0xda942042e4dd58b5ULL;
    std::uint64_t k2 = splitmix64(s);
    state = k1 ^ (k2 + 0x9e3779b97f4a7c15ULL * (index + 1));
}

std::uint64_t SampleRng::next_u64() { return splitmix64(state); }

double SampleRng::next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> SampleRng::next_normal_pair() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
}

std::vector<std::pair<int, int>> f_tau_index_set(double q, const MCConfig& cfg) {
    std::vector<std::pair<int, int>> idx;
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("f_tau_index_set: q must be in (0,1)");
    for (int n = 1; n <= cfg.n_modes; ++n) {
        if (std::pow(q, n) < cfg.f_cutoff) break;
        for (int m = 1;; ++m) {
            if (std::pow(q, static_cast<double>(n) * m) < cfg.f_cutoff) break;
            idx.emplace_back(n, m);
        }
    }
    return idx;
}

FieldSample sample_field(SampleRng& rng, const ModularParam& m, const MCConfig& cfg) {
    if (!m.real_q() || !(m.q.real() > 0.0 && m.q.real() < 1.0))
        throw std::domain_error("sample_field: covariance formulas require real q in (0,1)");
    FieldSample s;
    s.q = m.q.real();
    s.a.resize(cfg.n_modes);
    s.b.resize(cfg.n_modes);
    for (int n = 0; n < cfg.n_modes; ++n) {
        auto [ga, gb] = rng.next_normal_pair();
        s.a(n) = ga;
        s.b(n) = gb;
    }
    s.f_index = f_tau_index_set(s.q, cfg);
    s.fa.resize(s.f_index.size());
    s.fb.resize(s.f_index.size());
    for (size_t k = 0; k < s.f_index.size(); ++k) {
        auto [ga, gb] = rng.next_normal_pair();
        s.fa(k) = ga;
        s.fb(k) = gb;
    }
    return s;
}

double FieldSample::y_inf(double x) const {
    double acc = 0.0;
    for (int n = 1; n <= a.size(); ++n) {
        const double c = std::sqrt(2.0 / n);
        acc += c * (a(n - 1) * std::cos(2.0 * kPi * n * x) + b(n - 1) * std::sin(2.0 * kPi * n * x));
    }
    return acc;
}

double FieldSample::f_tau(double x) const {
    double acc = 0.0;
    for (size_t k = 0; k < f_index.size(); ++k) {
        const auto [n, m] = f_index[k];
        const double c = 2.0 * std::pow(q, static_cast<double>(n) * m) / std::sqrt(n);
        acc += c * (fa(k) * std::cos(2.0 * kPi * n * x) + fb(k) * std::sin(2.0 * kPi * n * x));
    }
    return acc;
}

double y_inf_variance(const MCConfig& cfg) {
    double v = 0.0;
    for (int n = 1; n <= cfg.n_modes; ++n) v += 2.0 / n;
    return v;
}

double f_tau_variance(double q, const MCConfig& cfg) {
    double v = 0.0;
    for (const auto& [n, m] : f_tau_index_set(q, cfg))
        v += 4.0 * std::pow(q, 2.0 * static_cast<double>(n) * m) / n;
    return v;
}

namespace {

struct Grid {
    Eigen::VectorXd x;   // graded abscissas x = s^2 (3 - 2s)
    Eigen::VectorXd jac; // 6 s (1-s) / G
};

Grid make_grid(int G) {
    Grid g;
    g.x.resize(G);
    g.jac.resize(G);
    for (int j = 0; j < G; ++j) {
        const double s = (j + 0.5) / G;
        g.x(j) = s * s * (3.0 - 2.0 * s);
        g.jac(j) = 6.0 * s * (1.0 - s) / G;
    }
    return g;
}

} // namespace

Complex gmc_integral(const FieldSample& sample, const std::function<Complex(double)>& weight,
                     double gamma, const MCConfig& cfg, GmcField field) {
    const Grid grid = make_grid(cfg.grid_points);
    double var = y_inf_variance(cfg);
    if (field == GmcField::torus) var += f_tau_variance(sample.q, cfg);
    const double shift = gamma * gamma / 8.0 * var;
    Complex acc = 0.0;
    for (int j = 0; j < grid.x.size(); ++j) {
        const double x = grid.x(j);
        const double y = (field == GmcField::torus) ? sample.y_tau(x) : sample.y_inf(x);
        const double e = gamma / 2.0 * y - shift;
        if (!std::isfinite(e)) throw std::runtime_error("gmc_integral: non-finite exponent");
        acc += weight(x) * std::exp(e) * grid.jac(j);
    }
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
        throw std::runtime_error("gmc_integral: overflow in exponential");
    return acc;
}

namespace {

// Batched estimator of E[X^p] with X = sum_j w_j exp((gamma/2) Y(x_j) - var shift),
// w real positive. Grid evaluation is one dense matrix product per block of
// samples; reduction is a fixed-order sum over batches so results are
// byte-identical for any thread count.
struct GmcEngine {
    const MCConfig cfg;
    double gamma, q, power;
    Eigen::VectorXd wvec; // weight x jacobian on the grid
    Eigen::MatrixXd trig; // G x 2N: [cos(2 pi n x) sqrt(2/n) | sin(...)]
    std::vector<std::pair<int, int>> fidx;
    std::vector<double> fcoef; // 2 q^{nm} / sqrt(n)
    double var_shift;

    GmcEngine(const MCConfig& cfg_, double gamma_, double q_, double power_,
              const std::function<double(double)>& weight)
        : cfg(cfg_), gamma(gamma_), q(q_), power(power_) {
        const Grid grid = make_grid(cfg.grid_points);
        wvec.resize(cfg.grid_points);
        for (int j = 0; j < cfg.grid_points; ++j) wvec(j) = weight(grid.x(j)) * grid.jac(j);
        const int N = cfg.n_modes;
        trig.resize(cfg.grid_points, 2 * N);
        for (int n = 1; n <= N; ++n) {
            const double c = std::sqrt(2.0 / n);
            for (int j = 0; j < cfg.grid_points; ++j) {
                trig(j, n - 1) = c * std::cos(2.0 * kPi * n * grid.x(j));
                trig(j, N + n - 1) = c * std::sin(2.0 * kPi * n * grid.x(j));
            }
        }
        fidx = f_tau_index_set(q, cfg);
        fcoef.resize(fidx.size());
        for (size_t k = 0; k < fidx.size(); ++k)
            fcoef[k] = 2.0 * std::pow(q, static_cast<double>(fidx[k].first) * fidx[k].second) /
                       std::sqrt(static_cast<double>(fidx[k].first));
        MCConfig c = cfg;
        var_shift = gamma * gamma / 8.0 * (y_inf_variance(c) + f_tau_variance(q, c));
    }

    // X^power for samples [first, first+count)
    void run_block(long first, long count, double* out) const {
        const int N = cfg.n_modes;
        const int G = cfg.grid_points;
        constexpr int kBlock = 32;
        Eigen::MatrixXd coeffs(2 * N, kBlock);
        Eigen::MatrixXd Y(G, kBlock);
        for (long base = 0; base < count; base += kBlock) {
            const int nb = static_cast<int>(std::min<long>(kBlock, count - base));
            for (int c = 0; c < nb; ++c) {
                SampleRng rng(cfg.seed, static_cast<std::uint64_t>(first + base + c));
                auto* col = coeffs.col(c).data();
                for (int n = 0; n < N; ++n) {
                    auto [ga, gb] = rng.next_normal_pair();
                    col[n] = ga;
                    col[N + n] = gb;
                }
                // fold the F_tau draws into the per-mode coefficients; the trig
                // matrix already carries sqrt(2/n), so divide it back out
                for (size_t k = 0; k < fidx.size(); ++k) {
                    auto [ga, gb] = rng.next_normal_pair();
                    const int n = fidx[k].first;
                    const double scale = fcoef[k] / std::sqrt(2.0 / n);
                    col[n - 1] += scale * ga;
                    col[N + n - 1] += scale * gb;
                }
            }
            Y.leftCols(nb).noalias() = trig * coeffs.leftCols(nb);
            for (int c = 0; c < nb; ++c) {
                const double X =
                    (wvec.array() * (gamma / 2.0 * Y.col(c).array() - var_shift).exp()).sum();
                out[base + c] = std::pow(X, power);
            }
        }
    }

    MCEstimate run() const {
        const int B = cfg.batches;
        const long S = cfg.samples;
        if (S <= 0 || B <= 0) throw std::invalid_argument("estimate: samples and batches must be positive");
        std::vector<long> batch_begin(B + 1);
        for (int b = 0; b <= B; ++b) batch_begin[b] = S * b / B;
        std::vector<double> batch_mean(B, 0.0);

        const int threads = std::min<int>(resolve_threads(cfg), B);
        std::vector<std::thread> pool;
        std::vector<double> buffer(static_cast<size_t>(S));
        auto work = [&](int t) {
            for (int b = t; b < B; b += threads) {
                const long lo = batch_begin[b], hi = batch_begin[b + 1];
                run_block(lo, hi - lo, buffer.data() + lo);
                double acc = 0.0;
                for (long i = lo; i < hi; ++i) acc += buffer[i];
                batch_mean[b] = acc / static_cast<double>(hi - lo);
            }
        };
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();

        double mean = 0.0;
        for (int b = 0; b < B; ++b)
            mean += batch_mean[b] * static_cast<double>(batch_begin[b + 1] - batch_begin[b]);
        mean /= static_cast<double>(S);
        double var = 0.0;
        for (int b = 0; b < B; ++b) {
            const double d = batch_mean[b] - mean;
            var += d * d;
        }
        var /= (B > 1) ? (B - 1.0) : 1.0;
        const double se = std::sqrt(var / B);
        return {Complex(mean, 0.0), se};
    }
};

double require_real(Complex z, const char* what) {
    if (z.imag() != 0.0) throw std::invalid_argument(std::string(what) + " must be real here");
    return z.real();
}

double require_real_q(const ModularParam& m, const char* where) {
    if (!m.real_q() || !(m.q.real() > 0.0 && m.q.real() < 1.0))
        throw std::domain_error(std::string(where) + ": requires real q in (0,1)");
    return m.q.real();
}

} // namespace

MCEstimate estimate_A_q(const BlockParams& params, const ModularParam& m, const MCConfig& cfg) {
    const double q = require_real_q(m, "estimate_A_q");
    const double g = params.gamma;
    const double a = require_real(params.alpha, "estimate_A_q: alpha");
    const double P = require_real(params.P, "estimate_A_q: P");
    const double Q = params.Q();
    if (!(a > -4.0 / g && a < Q))
        throw std::domain_error("estimate_A_q: alpha outside the moment range (-4/gamma, Q)");
    if (a * g / 2.0 >= 0.95)
        throw std::domain_error("estimate_A_q: insertion exponent too singular for the grid");

    auto weight = [&](double x) { return std::pow(std::abs(jacobi_theta(x, m, 0)), -a * g / 2.0) *
                                         std::exp(kPi * g * P * x); };
    GmcEngine engine(cfg, g, q, -a / g, weight);
    MCEstimate e = engine.run();
    const double eta = eta_norm(m).real() * std::pow(q, 1.0 / 12.0);
    const double pref = std::pow(q, (-a * g - 2.0 * a / g + 2.0) / 12.0) *
                        std::pow(eta, a * g + 2.0 * a / g - 1.5 * a * a - 2.0);
    const Complex phase = std::exp(kI * kPi * a * a / 2.0);
    return {pref * phase * e.value, pref * e.stderr_est};
}

MCEstimate estimate_G(const BlockParams& params, const ModularParam& m, const MCConfig& cfg) {
    require_real_q(m, "estimate_G");
    const double a = require_real(params.alpha, "estimate_G: alpha");
    const MCEstimate aq = estimate_A_q(params, m, cfg);
    const double eta_n = eta_norm(m).real(); // q^{-1/12} eta(q)
    const double expo = 1.0 - a * (params.Q() - a / 2.0);
    const Complex scale = std::pow(eta_n, expo) / a0_closed(params);
    return {scale * aq.value, std::abs(scale) * aq.stderr_est};
}

Complex reflected_prefactor(const BlockParams& params, const ModularParam& m) {
    const double g = params.gamma;
    const double Q = params.Q();
    const Complex a = params.alpha;
    const double q = require_real_q(m, "reflected_prefactor");
    const Complex eta = dedekind_eta(m);
    const Complex theta_p0 = jacobi_theta(0.0, m, 1);

    // gamma-factor arguments with their pole guard
    const Complex gargs[6] = {Complex(-g * g / 4.0),
                              2.0 * a / g - 1.0 - 4.0 / (g * g),
                              1.0 + 4.0 / (g * g) - a / g,
                              a * g / 2.0 - 1.0 - g * g / 2.0,
                              1.0 + g * g / 4.0 - a * g / 2.0,
                              a / g - 1.0};
    for (const Complex& z : gargs) {
        const double n = std::round(z.real());
        if (n <= 0.0 && std::abs(z - Complex(n, 0.0)) < 0.02)
            throw std::domain_error("reflected_prefactor: gamma factor too close to a pole");
    }

    Complex pref = -std::pow(Complex(q), (1.0 - a / g - Q * (Q + g / 2.0 - a)) / 6.0);
    pref *= std::pow(eta, 3.0 * a * g / 2.0 + 2.0 * a / g - 2.0 - 3.0 * a * a / 2.0 +
                              (Q + g / 2.0 - a) * (3.0 * a - 4.0 * Q));
    // Theta'(0) < 0; its fractional power follows the (2 pi e^{i pi}) rule
    pref *= two_pi_eipi_pow((Q - a) * (g - a)) *
            std::pow(Complex(-theta_p0.real() / (2.0 * kPi)), (Q - a) * (g - a));
    pref *= std::exp(kI * kPi * (a * g / 2.0 - (a - g / 2.0 - Q) * (a - 2.0 * Q)));
    pref *= std::pow(2.0 * kPi, (a - g / 2.0 - Q) * (Q - a));
    const double P = require_real(params.P, "reflected_prefactor: P");
    pref /= (1.0 - a / g) * (1.0 - std::exp(kPi * g * P - kI * kPi * g * g / 2.0 + kI * kPi * a * g / 2.0));
    pref *= gamma_complex(gargs[0]) * gamma_complex(gargs[1]) * gamma_complex(gargs[2]);
    pref *= rgamma_complex(gargs[3]) * rgamma_complex(gargs[4]) * rgamma_complex(gargs[5]);
    pref *= reflection_coeff(a - g / 2.0, g / 2.0, P, g);
    return pref;
}

MCEstimate estimate_reflected_A(const BlockParams& params, const ModularParam& m,
                                const MCConfig& cfg) {
    const double q_real = require_real_q(m, "estimate_reflected_A");
    const double g = params.gamma;
    const double Q = params.Q();
    const double a = require_real(params.alpha, "estimate_reflected_A: alpha");
    const double P = require_real(params.P, "estimate_reflected_A: P");
    if (!(a > Q && a < 2.0 * Q))
        throw std::domain_error("estimate_reflected_A: alpha must lie in (Q, 2Q)");
    const double insertion = 2.0 * Q - a;
    const double power = a / g - 4.0 / (g * g) - 1.0;
    if (!(power < std::min(4.0 / (g * g), 2.0 / g * (Q - insertion))))
        throw std::domain_error("estimate_reflected_A: GMC moment bound violated");
    if (insertion * g / 2.0 >= 0.95)
        throw std::domain_error("estimate_reflected_A: insertion exponent too singular for the grid");

    const Complex pref = reflected_prefactor(params, m);
    auto weight = [&](double x) {
        return std::pow(std::abs(jacobi_theta(x, m, 0)), -insertion * g / 2.0) *
               std::exp(kPi * g * P * x);
    };
    GmcEngine engine(cfg, g, q_real, power, weight);
    MCEstimate e = engine.run();
    const Complex phase = std::exp(-kI * kPi * insertion * g * power / 2.0);
    return {pref * phase * e.value, std::abs(pref) * e.stderr_est};
}

} // namespace torus_blocks
