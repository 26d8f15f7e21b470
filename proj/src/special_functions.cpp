#include "torus_blocks/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "torus_blocks/qseries.hpp"

namespace torus_blocks {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// Gauss--Legendre nodes/weights on [-1,1] by Newton iteration.
struct GaussRule {
    std::vector<double> x, w;
};

GaussRule legendre_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GaussRule& gl40() {
    static const GaussRule r = legendre_rule(40);
    return r;
}

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosCoeff[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

Complex lanczos_sum(Complex z) {
    Complex acc = kLanczosCoeff[0];
    for (int k = 1; k < 15; ++k) acc += kLanczosCoeff[k] / (z + static_cast<double>(k - 1));
    return acc;
}

// Gamma(z) for Re z >= 0.5.
Complex gamma_positive(Complex z) {
    const Complex base = z + (kLanczosG - 0.5);
    return std::sqrt(2.0 * kPi) * std::pow(base, z - 0.5) * std::exp(-base) * lanczos_sum(z);
}

Complex lgamma_positive(Complex z) {
    const Complex base = z + (kLanczosG - 0.5);
    return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(base) - base + std::log(lanczos_sum(z));
}

double nearest_nonpositive_integer_distance(Complex z) {
    if (z.real() > 0.5) return std::abs(z);
    const double n = std::round(z.real());
    return std::abs(z - Complex(std::min(n, 0.0), 0.0));
}

} // namespace

Complex gamma_complex(Complex z) {
    if (nearest_nonpositive_integer_distance(z) < 1e-13)
        throw std::domain_error("gamma_complex: pole at nonpositive integer");
    if (z.real() >= 0.5) return gamma_positive(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return kPi / (std::sin(kPi * z) * gamma_positive(1.0 - z));
}

Complex rgamma_complex(Complex z) {
    if (z.real() >= 0.5) return 1.0 / gamma_positive(z);
    return std::sin(kPi * z) * gamma_positive(1.0 - z) / kPi;
}

Complex lgamma_complex(Complex z) {
    if (z.real() >= 0.5) return lgamma_positive(z);
    return std::log(kPi) - std::log(std::sin(kPi * z)) - lgamma_positive(1.0 - z);
}

// --- ModularParam -------------------------------------------------------------

ModularParam ModularParam::from_tau(Complex tau) {
    if (!(tau.imag() > 0.0)) throw std::invalid_argument("ModularParam: Im tau must be positive");
    ModularParam m;
    m.tau = tau;
    m.q = std::exp(kI * kPi * tau);
    return m;
}

ModularParam ModularParam::from_q(Complex q) {
    if (!(std::abs(q) < 1.0) || q == Complex(0))
        throw std::invalid_argument("ModularParam: need 0 < |q| < 1");
    ModularParam m;
    m.q = q;
    m.tau = std::log(q) / (kI * kPi);
    if (std::abs(q.imag()) == 0.0 && q.real() > 0.0) m.tau = Complex(0.0, m.tau.imag());
    return m;
}

ModularParam ModularParam::from_real_q(double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("ModularParam: need q in (0,1)");
    return from_q(Complex(q, 0.0));
}

// --- double gamma ---------------------------------------------------------------

namespace {

// Taylor coefficients in t of (e^{-zt} - e^{-Qt/2}) / ((1-e^{-gt/2})(1-e^{-2t/g})) / t
// shifted so the integrand of the log Gamma_{gamma/2} representation is regular at 0:
// integrand(t) = c (1-e^{-t})/t + sum_{n>=2} G_n t^{n-2},  c = (z-Q/2)^2/2 = G_1.
struct DGammaSmallT {
    Complex c;
    std::vector<Complex> g; // G_n for n >= 2, index 0 <-> t^0 of the polynomial part

    Complex eval(double t) const {
        Complex poly = 0.0;
        for (int n = static_cast<int>(g.size()) - 1; n >= 0; --n) poly = poly * t + g[n];
        const double em = (t == 0.0) ? 1.0 : -std::expm1(-t) / t;
        return c * em + poly;
    }

    // integral of the integrand over [0, t0]
    Complex integral(double t0) const {
        // int_0^x (1-e^{-t})/t dt = sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        double term = t0, sum = 0.0;
        for (int k = 1; k < 60; ++k) {
            sum += term / k;
            term *= -t0 / (k + 1);
            if (std::abs(term) < 1e-18) break;
        }
        Complex acc = c * sum;
        for (size_t n = 0; n < g.size(); ++n)
            acc += g[n] * std::pow(t0, static_cast<double>(n + 1)) / static_cast<double>(n + 1);
        return acc;
    }
};

DGammaSmallT dgamma_small_t(Complex z, double gamma, int order) {
    const double Q = gamma / 2.0 + 2.0 / gamma;
    // N(t) = (e^{-zt} - e^{-Qt/2})/t, D(t) = (1-e^{-at})(1-e^{-bt})/t^2, a = g/2, b = 2/g
    Eigen::VectorXcd nc(order + 1), da(order + 1), db(order + 1);
    Complex zp = 1.0, qp = 1.0;
    double ap = 1.0, bp = 1.0, fact = 1.0;
    const double a = gamma / 2.0, b = 2.0 / gamma;
    for (int n = 0; n <= order; ++n) {
        zp *= -z;
        qp *= -Q / 2.0;
        ap *= -a;
        bp *= -b;
        fact *= (n + 1.0);
        nc(n) = (zp - qp) / fact;
        da(n) = -ap / fact;
        db(n) = -bp / fact;
    }
    QSeries N(nc), D = mul(QSeries(da), QSeries(db));
    QSeries ratio = mul(N, invert(D)); // (N/D)(t), constant term Q/2 - z
    DGammaSmallT out;
    out.c = (z - Q / 2.0) * (z - Q / 2.0) / 2.0;
    out.g.resize(order - 1);
    for (int n = 2; n <= order; ++n) out.g[n - 2] = ratio.coeff(n);
    return out;
}

Complex dgamma_integrand_direct(double t, Complex z, double gamma) {
    const double Q = gamma / 2.0 + 2.0 / gamma;
    const double d1 = -std::expm1(-gamma * t / 2.0);
    const double d2 = -std::expm1(-2.0 * t / gamma);
    const Complex f = (std::exp(-z * t) - std::exp(-Q * t / 2.0)) / (d1 * d2);
    const Complex c = (Q / 2.0 - z) * (Q / 2.0 - z) / 2.0;
    return (f - c * std::exp(-t) + (z - Q / 2.0) / t) / t;
}

// log Gamma_{gamma/2}(z) for Re z >= Q/2 by quadrature of the integral
// representation; the algebraic tail (z-Q/2)/T is added in closed form.
Complex log_double_gamma_core(Complex z, double gamma) {
    const double Q = gamma / 2.0 + 2.0 / gamma;
    const double scale = std::max({std::abs(z), Q / 2.0, 1.0});
    const double t0 = std::min(1.0, 8.0 / scale);
    const DGammaSmallT small = dgamma_small_t(z, gamma, 40);
    Complex acc = small.integral(t0);
    const double T = 45.0;
    const GaussRule& gl = gl40();
    double lo = t0;
    while (lo < T) {
        const double hi = std::min(2.0 * lo, T);
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < 40; ++i) {
            const double t = mid + half * gl.x[i];
            const Complex v = (t < t0) ? small.eval(t) : dgamma_integrand_direct(t, z, gamma);
            acc += half * gl.w[i] * v;
        }
        lo = hi;
    }
    acc += (z - Q / 2.0) / T;
    return acc;
}

} // namespace

double double_gamma_pole_distance(Complex z, double gamma) {
    if (z.real() > 0.5) return std::abs(z);
    const double a = gamma / 2.0, b = 2.0 / gamma;
    double best = std::abs(z);
    const int nmax = static_cast<int>(std::ceil(-z.real() / a)) + 2;
    for (int n = 0; n <= nmax; ++n) {
        const double rest = -z.real() - n * a;
        const int m = std::max(0, static_cast<int>(std::round(rest / b)));
        for (int dm = -1; dm <= 1; ++dm) {
            if (m + dm < 0) continue;
            best = std::min(best, std::abs(z + Complex(n * a + (m + dm) * b, 0.0)));
        }
    }
    return best;
}

Complex double_gamma(Complex z, double gamma) {
    if (!(gamma > 0.0 && gamma < 2.0)) throw std::invalid_argument("double_gamma: gamma outside (0,2)");
    if (double_gamma_pole_distance(z, gamma) < 1e-10)
        throw std::domain_error("double_gamma: argument on the pole lattice");
    const double Q = gamma / 2.0 + 2.0 / gamma;
    const double chi = 2.0 / gamma;
    // shift up until the integral representation applies comfortably
    Complex lg = 0.0;
    Complex zz = z;
    while (zz.real() < Q / 2.0) {
        // Gamma_{g/2}(z) = (2 pi)^{-1/2} chi^{1/2 - chi z} Gamma(chi z) Gamma_{g/2}(z + chi)
        lg += -0.5 * std::log(2.0 * kPi) + (0.5 - chi * zz) * std::log(chi) + lgamma_complex(chi * zz);
        zz += chi;
    }
    lg += log_double_gamma_core(zz, gamma);
    return std::exp(lg);
}

Complex s_gamma(Complex z, double gamma) {
    const double Q = gamma / 2.0 + 2.0 / gamma;
    return double_gamma(z, gamma) / double_gamma(Q - z, gamma);
}

// --- theta functions ----------------------------------------------------------

namespace {

int theta_kmax(const ModularParam& m, double abs_im_u) {
    const double aq = std::abs(m.q);
    if (!(aq < 1.0)) throw std::domain_error("theta: |q| must be < 1");
    const double tol = 1e-16 * (1.0 - aq * aq);
    // |q|^{2k} e^{2 pi |Im u|} < tol
    const double lq = std::log(aq);
    double k = (std::log(tol) - 2.0 * kPi * abs_im_u) / (2.0 * lq);
    int kmax = static_cast<int>(std::ceil(k)) + 2;
    return std::clamp(kmax, 4, 40000);
}

struct ThetaParts {
    Complex phi;            // phi(u) with Theta = sin(pi u) phi(u)
    Complex l1, l2, l3;     // derivatives of log phi
};

ThetaParts theta_parts(Complex u, const ModularParam& m, int derivs) {
    const int kmax = theta_kmax(m, std::abs(u.imag()));
    const Complex ep = std::exp(2.0 * kPi * kI * u);
    const Complex em = std::exp(-2.0 * kPi * kI * u);
    const Complex q2 = m.q * m.q;
    Complex hp = ep, hm = em, q2k = 1.0;
    Complex prod = 1.0, p0 = 1.0;
    Complex s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        q2k *= q2;
        hp = q2k * ep;
        hm = q2k * em;
        p0 *= (1.0 - q2k);
        prod *= (1.0 - hp) * (1.0 - hm);
        if (derivs > 0) {
            const Complex gp = hp / (1.0 - hp), gm = hm / (1.0 - hm);
            s1 += gp - gm;
            if (derivs > 1) s2 += gp * (1.0 + gp) + gm * (1.0 + gm);
            if (derivs > 2) s3 += gp * (1.0 + gp) * (1.0 + 2.0 * gp) - gm * (1.0 + gm) * (1.0 + 2.0 * gm);
        }
    }
    ThetaParts out;
    const Complex q14 = std::exp(kI * kPi * m.tau / 4.0);
    out.phi = -2.0 * q14 * p0 * prod;
    out.l1 = -2.0 * kPi * kI * s1;
    out.l2 = 4.0 * kPi * kPi * s2;
    out.l3 = 8.0 * kPi * kPi * kPi * kI * s3;
    return out;
}

} // namespace

Complex jacobi_theta(Complex u, const ModularParam& m, int deriv) {
    if (deriv < 0 || deriv > 3) throw std::invalid_argument("jacobi_theta: deriv must be 0..3");
    const ThetaParts p = theta_parts(u, m, deriv);
    const Complex s = std::sin(kPi * u), c = std::cos(kPi * u);
    const Complex phi = p.phi;
    if (deriv == 0) return s * phi;
    const Complex phi1 = phi * p.l1;
    if (deriv == 1) return kPi * c * phi + s * phi1;
    const Complex phi2 = phi * (p.l2 + p.l1 * p.l1);
    if (deriv == 2) return -kPi * kPi * s * phi + 2.0 * kPi * c * phi1 + s * phi2;
    const Complex phi3 = phi * (p.l3 + 3.0 * p.l1 * p.l2 + p.l1 * p.l1 * p.l1);
    return -kPi * kPi * kPi * c * phi - 3.0 * kPi * kPi * s * phi1 + 3.0 * kPi * c * phi2 + s * phi3;
}

Complex theta_triple_prime_ratio(const ModularParam& m) {
    const int kmax = theta_kmax(m, 0.0);
    const Complex q2 = m.q * m.q;
    Complex q2k = 1.0, sum = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        q2k *= q2;
        const Complex d = 1.0 - q2k;
        sum += q2k / (d * d);
    }
    return 24.0 * kPi * kPi * sum - kPi * kPi;
}

namespace {

// Factorization-based branch, valid for |Im u| < Im tau (every product factor
// stays inside the unit disk around 1, so principal logs never wind).
Complex log_theta_strip(Complex u, const ModularParam& m) {
    const int kmax = theta_kmax(m, std::abs(u.imag()));
    const Complex q2 = m.q * m.q;
    const Complex ep = std::exp(2.0 * kPi * kI * u);
    const Complex em = std::exp(-2.0 * kPi * kI * u);
    Complex q2k = 1.0, lphi = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        q2k *= q2;
        lphi += std::log(1.0 - q2k) + std::log(1.0 - q2k * ep) + std::log(1.0 - q2k * em);
    }
    // phi = -2 q^{1/4} prod; branch with Im log phi = pi on the real axis for q in (0,1)
    lphi += std::log(2.0) + kI * kPi + kI * kPi * m.tau / 4.0;
    // log sin(pi u), analytic on each half plane, 0 at u = 1/2
    Complex lsin;
    if (u.imag() >= 0.0) {
        lsin = -std::log(2.0) + kI * kPi / 2.0 - kI * kPi * u + std::log(1.0 - ep);
    } else {
        lsin = -std::log(2.0) - kI * kPi / 2.0 + kI * kPi * u + std::log(1.0 - em);
    }
    return lsin + lphi;
}

} // namespace

Complex log_theta(Complex u, const ModularParam& m) {
    const double im_tau = m.tau.imag();
    if (std::abs(u.imag()) < 0.9 * im_tau) return log_theta_strip(u, m);
    // Outside the horizontal strip: continue the branch along a vertical path
    // through the domain {x + y tau : x in (0,1)} by phase unwrapping.
    const double y = u.imag() / im_tau;
    const double x = u.real() - y * m.tau.real();
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("log_theta: u outside the branch domain");
    const Complex start(x, 0.0);
    Complex lcur = log_theta_strip(start, m);
    Complex prev_val = jacobi_theta(start, m, 0);
    const int steps = std::max(8, static_cast<int>(std::ceil(std::abs(u - start) * 256.0)));
    for (int j = 1; j <= steps; ++j) {
        const Complex uj = start + (u - start) * (static_cast<double>(j) / steps);
        const Complex vj = jacobi_theta(uj, m, 0);
        lcur += std::log(vj / prev_val); // |step phase| << pi by construction
        prev_val = vj;
    }
    return lcur;
}

Complex theta_frac_pow(Complex u, Complex c, const ModularParam& m) {
    return std::exp(c * log_theta(u, m));
}

Complex dedekind_eta(const ModularParam& m) {
    return std::exp(kI * kPi * m.tau / 12.0) * eta_norm(m);
}

Complex eta_norm(const ModularParam& m) {
    const int kmax = theta_kmax(m, 0.0);
    const Complex q2 = m.q * m.q;
    Complex q2k = 1.0, p = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        q2k *= q2;
        p *= (1.0 - q2k);
    }
    return p;
}

// --- Weierstrass elliptic function ---------------------------------------------

Complex weierstrass_p(Complex u, const ModularParam& m, WpRoute route) {
    const Complex s = std::sin(kPi * u);
    if (std::abs(s) < 1e-12 && std::abs(u.imag()) < 1e-12)
        throw std::domain_error("weierstrass_p: u on the period lattice");
    if (route == WpRoute::theta) {
        const Complex th = jacobi_theta(u, m, 0);
        const Complex th1 = jacobi_theta(u, m, 1);
        const Complex th2 = jacobi_theta(u, m, 2);
        return th1 * th1 / (th * th) - th2 / th + theta_triple_prime_ratio(m) / 3.0;
    }
    const int kmax = theta_kmax(m, std::abs(u.imag())) + 8;
    const Complex q2 = m.q * m.q;
    Complex q2n = 1.0, sum_cos = 0.0, sum_const = 0.0;
    for (int n = 1; n <= kmax; ++n) {
        q2n *= q2;
        const Complex d = 1.0 - q2n;
        sum_cos += static_cast<double>(n) * q2n / d * std::cos(2.0 * kPi * static_cast<double>(n) * u);
        sum_const += q2n / (d * d);
    }
    return kPi * kPi / (s * s) - 8.0 * kPi * kPi * sum_cos - kPi * kPi / 3.0 + 8.0 * kPi * kPi * sum_const;
}

std::vector<double> wp_poly(int n) {
    if (n < 1) throw std::invalid_argument("wp_poly: n must be >= 1");
    if (n % 2 == 1) return {};
    const int k = n / 2;
    // wp~_{2k}(w) = 8 pi^2 sum_{d | k} d (1 - T_d(1 - 2w)), w = sin^2(pi u)
    std::vector<double> acc(k + 1, 0.0);
    std::vector<double> tprev{1.0};          // T_0(1-2w)
    std::vector<double> tcur{1.0, -2.0};     // T_1(1-2w)
    auto add_term = [&acc](const std::vector<double>& td, double d) {
        acc[0] += d; // d * (1 - T_d) : subtract below
        for (size_t i = 0; i < td.size(); ++i) acc[i] -= d * td[i];
    };
    for (int d = 1; d <= k; ++d) {
        if (d > 1) {
            // T_{d} = 2(1-2w) T_{d-1} - T_{d-2}
            std::vector<double> t(tcur.size() + 1, 0.0);
            for (size_t i = 0; i < tcur.size(); ++i) {
                t[i] += 2.0 * tcur[i];
                t[i + 1] += -4.0 * tcur[i];
            }
            for (size_t i = 0; i < tprev.size(); ++i) t[i] -= tprev[i];
            tprev = tcur;
            tcur = t;
        }
        if (k % d == 0) add_term(tcur, static_cast<double>(d));
    }
    for (double& a : acc) a *= 8.0 * kPi * kPi;
    return acc;
}

// --- reflection coefficient ------------------------------------------------------

Complex reflection_coeff(Complex alpha, double chi, double P, double gamma) {
    const double Q = gamma / 2.0 + 2.0 / gamma;
    const Complex qa = Q - alpha;
    if (std::abs(qa) < 1e-13) throw std::domain_error("reflection_coeff: pole at alpha = Q");
    const Complex num_pow =
        std::pow(2.0 * kPi, 2.0 / gamma * qa - 0.5) * std::pow(2.0 / gamma, gamma / 2.0 * qa - 0.5);
    const Complex gfac = std::pow(gamma_complex(Complex(1.0 - gamma * gamma / 4.0)), 2.0 / gamma * qa);
    const Complex phase = std::exp(-kI * kPi * (chi / 2.0 + kI * P) * qa);
    return num_pow / (qa * gfac) * double_gamma(alpha - gamma / 2.0, gamma) * phase /
           (double_gamma(qa, gamma) * s_gamma(alpha / 2.0 + chi / 2.0 + kI * P, gamma) *
            s_gamma(alpha / 2.0 - chi / 2.0 - kI * P, gamma));
}

} // namespace torus_blocks
