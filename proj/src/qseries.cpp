#include "torus_blocks/qseries.hpp"

namespace torus_blocks {

namespace {
int common_order(const QSeries& a, const QSeries& b) {
    return std::min(a.order(), b.order());
}
}

QSeries add(const QSeries& a, const QSeries& b) {
    const int K = common_order(a, b);
    Eigen::VectorXcd c = a.coeffs().head(K + 1) + b.coeffs().head(K + 1);
    return QSeries(std::move(c));
}

QSeries sub(const QSeries& a, const QSeries& b) {
    const int K = common_order(a, b);
    Eigen::VectorXcd c = a.coeffs().head(K + 1) - b.coeffs().head(K + 1);
    return QSeries(std::move(c));
}

QSeries scale(const QSeries& a, Complex s) {
    return QSeries(Eigen::VectorXcd(s * a.coeffs()));
}

QSeries mul(const QSeries& a, const QSeries& b) {
    const int K = common_order(a, b);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(K + 1);
    for (int n = 0; n <= K; ++n) {
        // pairwise-symmetric summation keeps mul(a,b) and mul(b,a) bit-identical
        Complex acc = 0;
        for (int k = 0; 2 * k < n; ++k)
            acc += a.coeff(k) * b.coeff(n - k) + a.coeff(n - k) * b.coeff(k);
        if (n % 2 == 0) acc += a.coeff(n / 2) * b.coeff(n / 2);
        c(n) = acc;
    }
    return QSeries(std::move(c));
}

QSeries invert(const QSeries& a) {
    if (a.coeff(0) == Complex(0)) throw std::domain_error("invert: zero leading coefficient");
    const int K = a.order();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(K + 1);
    c(0) = 1.0 / a.coeff(0);
    for (int n = 1; n <= K; ++n) {
        Complex acc = 0;
        for (int k = 1; k <= n; ++k) acc += a.coeff(k) * c(n - k);
        c(n) = -acc / a.coeff(0);
    }
    return QSeries(std::move(c));
}

QSeries log_series(const QSeries& a) {
    if (a.coeff(0) != Complex(1)) throw std::domain_error("log_series: series is not unit-leading");
    const int K = a.order();
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(K + 1);
    for (int n = 1; n <= K; ++n) {
        Complex acc = static_cast<double>(n) * a.coeff(n);
        for (int k = 1; k < n; ++k) acc -= static_cast<double>(k) * b(k) * a.coeff(n - k);
        b(n) = acc / static_cast<double>(n);
    }
    return QSeries(std::move(b));
}

QSeries exp_series(const QSeries& b) {
    if (b.coeff(0) != Complex(0)) throw std::domain_error("exp_series: constant term must vanish");
    const int K = b.order();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(K + 1);
    c(0) = 1.0;
    for (int n = 1; n <= K; ++n) {
        Complex acc = 0;
        for (int k = 1; k <= n; ++k) acc += static_cast<double>(k) * b.coeff(k) * c(n - k);
        c(n) = acc / static_cast<double>(n);
    }
    return QSeries(std::move(c));
}

QSeries pow_complex(const QSeries& a, Complex beta) {
    if (a.coeff(0) != Complex(1)) throw std::domain_error("pow: series is not unit-leading");
    if (beta == Complex(0)) return QSeries::constant(1.0, a.order());
    return exp_series(scale(log_series(a), beta));
}

QSeries pow_real(const QSeries& a, double beta) { return pow_complex(a, Complex(beta)); }

QSeries eta_norm_series(int K) {
    if (K < 0) throw std::invalid_argument("eta_norm_series: negative order");
    QSeries p = QSeries::constant(1.0, K);
    for (int k = 1; 2 * k <= K; ++k) {
        QSeries f = QSeries::constant(1.0, K);
        f.coeff_ref(2 * k) = -1.0;
        p = mul(p, f);
    }
    return p;
}

} // namespace torus_blocks
