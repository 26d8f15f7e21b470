#include "torus_blocks/hypergeometric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "torus_blocks/special_functions.hpp"

namespace torus_blocks {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

bool is_nonpositive_integer(Complex z, double tol = 1e-12) {
    const double n = std::round(z.real());
    return n <= 0.0 && std::abs(z - Complex(n, 0.0)) < tol;
}

bool is_integer(Complex z, double tol = 1e-12) {
    return std::abs(z - Complex(std::round(z.real()), 0.0)) < tol;
}

Complex hyp2f1_series_sum(const HGFParams& p, Complex w) {
    Complex term = 1.0, sum = 1.0;
    for (long n = 0; n < 100000; ++n) {
        const double dn = static_cast<double>(n);
        term *= (dn + p.A) * (dn + p.B) / ((dn + 1.0) * (dn + p.C)) * w;
        sum += term;
        if (std::abs(term) < 1e-15 * std::abs(sum) && n > 4) return sum;
    }
    throw std::runtime_error("hyp2f1: series did not converge within the term cap");
}

} // namespace

Complex hyp2f1(const HGFParams& p, Complex w) {
    if (is_nonpositive_integer(p.C))
        throw std::domain_error("hyp2f1: C is a nonpositive integer");
    const double aw = std::abs(w);
    if (aw > 1.0 + 1e-14)
        throw std::domain_error("hyp2f1: |w| > 1 not supported");
    if (aw <= 0.9) return hyp2f1_series_sum(p, w);

    const Complex s = p.C - p.A - p.B;
    if (s.real() <= 0.0 && aw > 1.0 - 1e-14)
        throw std::domain_error("hyp2f1: |w| = 1 requires Re(C-A-B) > 0");
    if (is_integer(s)) {
        // degenerate connection formula not implemented; the series still
        // converges geometrically away from w = 1
        if (std::abs(1.0 - w) > 0.05) return hyp2f1_series_sum(p, w);
        throw std::domain_error("hyp2f1: C-A-B integer near w = 1");
    }
    const Complex g1 = gamma_complex(p.C) * gamma_complex(s) *
                       rgamma_complex(p.C - p.A) * rgamma_complex(p.C - p.B);
    if (w == Complex(1.0)) return g1;
    const Complex g2 = gamma_complex(p.C) * gamma_complex(-s) *
                       rgamma_complex(p.A) * rgamma_complex(p.B);
    const HGFParams p1{p.A, p.B, p.A + p.B - p.C + 1.0};
    const HGFParams p2{p.C - p.A, p.C - p.B, p.C - p.A - p.B + 1.0};
    const Complex om = 1.0 - w;
    return g1 * hyp2f1_series_sum(p1, om) + g2 * std::pow(om, s) * hyp2f1_series_sum(p2, om);
}

std::pair<Complex, Complex> connection_coeffs(const HGFParams& p) {
    const Complex s = p.C - p.A - p.B;
    const Complex g1 = gamma_complex(p.C) * gamma_complex(s) *
                       rgamma_complex(p.C - p.A) * rgamma_complex(p.C - p.B);
    const Complex g2 = gamma_complex(2.0 - p.C) * gamma_complex(s) *
                       rgamma_complex(1.0 - p.A) * rgamma_complex(1.0 - p.B);
    return {g1, g2};
}

HGFParams hgf_level(const BlockParams& params, double chi, int n) {
    if (n < 0) throw std::invalid_argument("hgf_level: n must be nonnegative");
    const Complex l = params.l_chi(chi);
    const Complex root = std::sqrt(params.P * params.P + 2.0 * static_cast<double>(n));
    return {-l / 2.0 + kI * chi / 2.0 * root, -l / 2.0 - kI * chi / 2.0 * root, 0.5 - l};
}

QSeries hyp2f1_series(const HGFParams& p, int order) {
    Eigen::VectorXcd c(order + 1);
    c(0) = 1.0;
    for (int n = 0; n < order; ++n) {
        const double dn = static_cast<double>(n);
        c(n + 1) = c(n) * (dn + p.A) * (dn + p.B) / ((dn + 1.0) * (dn + p.C));
    }
    return QSeries(std::move(c));
}

namespace {

QSeries binomial_series(Complex exponent, int order) {
    // (1 - t)^exponent
    Eigen::VectorXcd c(order + 1);
    c(0) = 1.0;
    for (int n = 1; n <= order; ++n)
        c(n) = c(n - 1) * (static_cast<double>(n) - 1.0 - exponent) / static_cast<double>(n);
    return QSeries(std::move(c));
}

QSeries particular_at_order(const QSeries& gt, const HGFParams& p, Complex X, int L) {
    const QSeries gtl = gt.truncated(L);
    const QSeries v1 = hyp2f1_series(p, L);
    const QSeries v2 = hyp2f1_series({p.A - p.C + 1.0, p.B - p.C + 1.0, 2.0 - p.C}, L);
    const QSeries damp = binomial_series(p.A + p.B - p.C, L); // (1-t)^{A+B-C}
    const QSeries e1 = mul(mul(v2, gtl), damp);
    const QSeries e2 = mul(mul(v1, gtl), damp);
    Eigen::VectorXcd f1(L + 1), f2(L + 1);
    for (int n = 0; n <= L; ++n) {
        f1(n) = e1.coeff(n) / (static_cast<double>(n) + X + 1.0);
        f2(n) = e2.coeff(n) / (static_cast<double>(n) + X + p.C);
    }
    const QSeries t1 = mul(v1, QSeries(std::move(f1)));
    const QSeries t2 = mul(v2, QSeries(std::move(f2)));
    // f = w (v2 F2 - v1 F1) / (1 - C)
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(L + 1);
    for (int n = 1; n <= L; ++n) out(n) = (t2.coeff(n - 1) - t1.coeff(n - 1)) / (1.0 - p.C);
    return QSeries(std::move(out));
}

} // namespace

QSeries particular_solution(const QSeries& gtilde, const HGFParams& p, Complex X,
                            const ParticularOptions& opts) {
    const Complex s = p.C - p.A - p.B;
    if (is_integer(p.C)) throw std::domain_error("particular_solution: C must be noninteger");
    if (!(s.real() > 0.0 && s.real() < 1.0))
        throw std::domain_error("particular_solution: need Re(C-A-B) in (0,1)");
    const bool x_zero = std::abs(X) < 1e-14;
    if (!x_zero && std::abs(X - (1.0 - p.C)) > 1e-12)
        throw std::invalid_argument("particular_solution: X must be 0 or 1-C");

    int L = std::max(opts.order, gtilde.order());
    while (true) {
        QSeries f = particular_at_order(gtilde, p, X, L);
        double tail = 0.0;
        for (int n = std::max(0, L - 10); n <= L; ++n) tail += std::abs(f.coeff(n));
        if (tail < opts.tail_tol * std::max(1.0, f.max_abs()) || L >= opts.max_order) return f;
        L = std::min(2 * L, opts.max_order);
    }
}

} // namespace torus_blocks
