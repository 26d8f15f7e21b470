#include "torus_blocks/zamolodchikov.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace torus_blocks {

Complex p_mn(ResidueIndex idx, double gamma) {
    return Complex(0.0, 2.0 * idx.n / gamma + gamma * idx.m / 2.0);
}

Complex r_mn(ResidueIndex idx, const BlockParams& params) {
    const int m = idx.m, n = idx.n;
    if (m < 1 || n < 1) throw std::invalid_argument("r_mn: m, n must be >= 1");
    const double g = params.gamma;
    const double Q = params.Q();
    Complex num = 2.0;
    for (int j = -m; j <= m - 1; ++j)
        for (int l = -n; l <= n - 1; ++l)
            num *= Q - params.alpha / 2.0 + j * g / 2.0 + 2.0 * l / g;
    Complex den = 1.0;
    for (int j = 1 - m; j <= m; ++j) {
        for (int l = 1 - n; l <= n; ++l) {
            if ((j == 0 && l == 0) || (j == m && l == n)) continue;
            const double f = j * g / 2.0 + 2.0 * l / g;
            if (std::abs(f) < 1e-12) throw std::domain_error("r_mn: vanishing denominator factor");
            den *= f;
        }
    }
    return num / den;
}

namespace {

struct MemoKey {
    long long re, im;
    int order;
    bool operator<(const MemoKey& o) const {
        return std::tie(re, im, order) < std::tie(o.re, o.im, o.order);
    }
};

MemoKey make_key(Complex P, int K) {
    return {std::llround(P.real() * 1e12), std::llround(P.imag() * 1e12), K};
}

struct RecursionContext {
    const BlockParams& base;
    std::map<MemoKey, QSeries> memo;
    double min_pole_distance = std::numeric_limits<double>::infinity();

    const QSeries& solve(Complex P, int K) {
        const MemoKey key = make_key(P, K);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        QSeries f = pow_real(eta_norm_series(K), -1.0);
        for (int m = 1; 2 * m <= K; ++m) {
            for (int n = 1; 2 * m * n <= K; ++n) {
                const Complex pmn = p_mn({m, n}, base.gamma);
                const Complex den = P * P - pmn * pmn;
                if (std::abs(den) < 1e-10)
                    throw std::domain_error("recursion_series: momentum resonant with P_{m,n}");
                min_pole_distance = std::min(min_pole_distance, std::abs(den));
                const Complex coef = r_mn({m, n}, base) / den;
                const Complex pminus = p_mn({-m, n}, base.gamma);
                const QSeries& tail = solve(pminus, K - 2 * m * n);
                for (int k = 0; k <= tail.order(); ++k)
                    f.coeff_ref(k + 2 * m * n) += coef * tail.coeff(k);
            }
        }
        return memo.emplace(key, std::move(f)).first->second;
    }
};

} // namespace

RecursionResult recursion_series_info(const BlockParams& params, int K) {
    if (K < 0) throw std::invalid_argument("recursion_series: order must be nonnegative");
    RecursionContext ctx{params, {}, std::numeric_limits<double>::infinity()};
    QSeries f = ctx.solve(params.P, K);
    return {std::move(f), ctx.min_pole_distance};
}

QSeries recursion_series(const BlockParams& params, int K) {
    return recursion_series_info(params, K).series;
}

} // namespace torus_blocks
