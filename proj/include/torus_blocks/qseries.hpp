#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace torus_blocks {

using Complex = std::complex<double>;

// Truncated power series in the nome q with complex coefficients.
// coeff(n) is the coefficient of q^n; order() is the highest retained power.
// Arithmetic truncates to the shorter operand.
class QSeries {
public:
    QSeries() : c_(Eigen::VectorXcd::Zero(1)) {}
    explicit QSeries(Eigen::VectorXcd coeffs) : c_(std::move(coeffs)) {
        if (c_.size() == 0) throw std::invalid_argument("QSeries: empty coefficient vector");
    }
    static QSeries zero(int order) { return QSeries(Eigen::VectorXcd::Zero(order + 1)); }
    static QSeries constant(Complex c0, int order) {
        QSeries s = zero(order);
        s.c_(0) = c0;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    Complex coeff(int n) const { return (n >= 0 && n <= order()) ? c_(n) : Complex(0); }
    Complex& coeff_ref(int n) { return c_(n); }
    const Eigen::VectorXcd& coeffs() const { return c_; }

    QSeries truncated(int order) const {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(order + 1);
        const int m = std::min(order, this->order());
        out.head(m + 1) = c_.head(m + 1);
        return QSeries(out);
    }

    double max_abs() const {
        double m = 0;
        for (int n = 0; n <= order(); ++n) m = std::max(m, std::abs(c_(n)));
        return m;
    }

    // Horner evaluation at a point q.
    Complex eval(Complex q) const {
        Complex acc = c_(order());
        for (int n = order() - 1; n >= 0; --n) acc = acc * q + c_(n);
        return acc;
    }

private:
    Eigen::VectorXcd c_;
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& a, Complex s);

// Cauchy product truncated to min(order(a), order(b)).
QSeries mul(const QSeries& a, const QSeries& b);

// Multiplicative inverse to the retained order; requires c_0 != 0.
QSeries invert(const QSeries& a);

// log of a unit-leading series (c_0 = 1) by the termwise recurrence
//   n a_n = sum_{k=1..n} k b_k a_{n-k}.
QSeries log_series(const QSeries& a);

// exp of a series with c_0 = 0 by the termwise recurrence
//   n c_n = sum_{k=1..n} k b_k c_{n-k}.
QSeries exp_series(const QSeries& b);

// a^beta = exp(beta log a) for unit-leading a.
QSeries pow_real(const QSeries& a, double beta);
QSeries pow_complex(const QSeries& a, Complex beta);

// Series of q^{-1/12} eta(q) = prod_{k>=1} (1 - q^{2k}), truncated at order K.
// Unit-leading; only even powers carry nonzero coefficients.
QSeries eta_norm_series(int K);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }
inline QSeries operator*(Complex s, const QSeries& a) { return scale(a, s); }

} // namespace torus_blocks
