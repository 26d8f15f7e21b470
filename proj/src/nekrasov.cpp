#include "torus_blocks/nekrasov.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace torus_blocks {

YoungDiagram::YoungDiagram(std::vector<int> p) : parts(std::move(p)) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw std::invalid_argument("YoungDiagram: parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("YoungDiagram: parts must be weakly decreasing");
    }
}

int YoungDiagram::size() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

int YoungDiagram::part(int i) const {
    return (i >= 1 && i <= static_cast<int>(parts.size())) ? parts[i - 1] : 0;
}

int YoungDiagram::transpose_part(int j) const {
    int c = 0;
    for (int p : parts)
        if (p >= j) ++c;
    return c;
}

YoungDiagram YoungDiagram::transposed() const {
    std::vector<int> t;
    for (int j = 1; j <= part(1); ++j) t.push_back(transpose_part(j));
    return YoungDiagram(std::move(t));
}

std::pair<int, int> arm_leg(const YoungDiagram& y, Cell s) {
    if (s.i < 1 || s.j < 1) throw std::invalid_argument("arm_leg: cell indices must be >= 1");
    return {y.transpose_part(s.j) - s.i, y.part(s.i) - s.j};
}

Complex e_factor(int i, int j, Cell s, const DiagramPair& pair, const BlockParams& params) {
    const YoungDiagram& yi = (i == 1) ? pair.y1 : pair.y2;
    const YoungDiagram& yj = (j == 1) ? pair.y1 : pair.y2;
    const int H = yj.transpose_part(s.j) - s.i;
    const int V = yi.part(s.i) - s.j;
    Complex e = -params.gamma / 2.0 * static_cast<double>(H) +
                2.0 / params.gamma * static_cast<double>(V + 1);
    if (i == 1 && j == 2) e += Complex(0.0, 1.0) * params.P;
    if (i == 2 && j == 1) e -= Complex(0.0, 1.0) * params.P;
    return e;
}

const std::vector<std::vector<int>>& partitions_of(int k) {
    static std::mutex mu;
    static std::vector<std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= k) {
        const int n = static_cast<int>(cache.size());
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        // descending-parts recursion
        auto rec = [&](auto&& self, int rem, int maxpart) -> void {
            if (rem == 0) {
                out.push_back(cur);
                return;
            }
            for (int p = std::min(rem, maxpart); p >= 1; --p) {
                cur.push_back(p);
                self(self, rem - p, p);
                cur.pop_back();
            }
        };
        rec(rec, n, n == 0 ? 1 : n);
        cache.push_back(std::move(out));
    }
    return cache[k];
}

long pair_partition_count(int k) {
    long c = 0;
    for (int j = 0; j <= k; ++j)
        c += static_cast<long>(partitions_of(j).size()) *
             static_cast<long>(partitions_of(k - j).size());
    return c;
}

namespace {

// Product over s in Y_i of the four (i,j) factor ratios. The mass entering
// the numerator is alpha/2, matching the conformal dimension (alpha/2)(Q-alpha/2)
// and the closed form of the q^2 coefficient.
Complex pair_weight(const DiagramPair& pair, const BlockParams& params) {
    const double Q = params.Q();
    const Complex mass = params.alpha / 2.0;
    Complex w = 1.0;
    for (int i = 1; i <= 2; ++i) {
        const YoungDiagram& yi = (i == 1) ? pair.y1 : pair.y2;
        for (int ci = 1; ci <= static_cast<int>(yi.parts.size()); ++ci) {
            for (int cj = 1; cj <= yi.parts[ci - 1]; ++cj) {
                const Cell s{ci, cj};
                for (int j = 1; j <= 2; ++j) {
                    const Complex e = e_factor(i, j, s, pair, params);
                    const Complex den = e * (Q - e);
                    if (std::abs(den) < 1e-12) {
                        std::ostringstream msg;
                        msg << "z_coeff: degenerate factor E(Q-E) at pair sizes (" << pair.y1.size()
                            << "," << pair.y2.size() << "), cell (" << ci << "," << cj << "), (i,j)=("
                            << i << "," << j << ")";
                        throw std::domain_error(msg.str());
                    }
                    w *= (e - mass) * (Q - e - mass) / den;
                }
            }
        }
    }
    return w;
}

} // namespace

Complex z_coeff(int k, const BlockParams& params) {
    if (k < 0) throw std::invalid_argument("z_coeff: k must be nonnegative");
    if (k == 0) return 1.0;
    Complex acc = 0.0;
    for (int j = 0; j <= k; ++j) {
        for (const auto& p1 : partitions_of(j)) {
            for (const auto& p2 : partitions_of(k - j)) {
                const DiagramPair pair{YoungDiagram(p1), YoungDiagram(p2)};
                acc += pair_weight(pair, params);
            }
        }
    }
    return acc;
}

QSeries block_series(const BlockParams& params, int K) {
    if (K < 0) throw std::invalid_argument("block_series: order must be nonnegative");
    QSeries z = QSeries::constant(1.0, K);
    for (int k = 1; 2 * k <= K; ++k) z.coeff_ref(2 * k) = z_coeff(k, params);
    const Complex expo = 1.0 - params.alpha * (params.Q() - params.alpha / 2.0);
    return mul(pow_complex(eta_norm_series(K), expo), z);
}

} // namespace torus_blocks
