#include "torus_blocks/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace torus_blocks {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

QuadResult tanh_sinh_01(const std::function<std::complex<double>(double)>& f, int level) {
    const double h = std::ldexp(1.0, -level);
    // node arguments where the weight underflows: cosh(pi/2 sinh(kh)) ~ 1/eps
    const double tmax = std::asinh(std::atanh(1.0 - 1e-16) / kHalfPi);
    const int K = static_cast<int>(std::ceil(tmax / h));
    std::complex<double> fine = 0.0, coarse = 0.0;
    for (int k = -K; k <= K; ++k) {
        const double t = k * h;
        const double sh = kHalfPi * std::sinh(t);
        const double x = 0.5 * (1.0 + std::tanh(sh)); // in (0,1)
        if (x <= 0.0 || x >= 1.0) continue;
        const double ch = std::cosh(sh);
        const double w = 0.5 * h * kHalfPi * std::cosh(t) / (ch * ch);
        const std::complex<double> v = w * f(x);
        fine += v;
        if (k % 2 == 0) coarse += 2.0 * v;
    }
    return {fine, std::abs(fine - coarse)};
}

QuadResult tanh_sinh(const std::function<std::complex<double>(double)>& f, double a, double b,
                     int level) {
    const double len = b - a;
    QuadResult r = tanh_sinh_01([&](double t) { return f(a + len * t); }, level);
    r.value *= len;
    r.err_est *= std::abs(len);
    return r;
}

} // namespace torus_blocks
