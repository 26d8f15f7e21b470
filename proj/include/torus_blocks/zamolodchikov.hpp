#pragma once

#include "torus_blocks/block_params.hpp"
#include "torus_blocks/qseries.hpp"

namespace torus_blocks {

struct ResidueIndex {
    int m, n;
};

// P_{m,n} = 2in/gamma + i gamma m / 2; negative m gives the P_{-m,n} variants.
Complex p_mn(ResidueIndex idx, double gamma);

// R_{gamma,m,n}(alpha): 2 prod_{j=-m}^{m-1} prod_{l=-n}^{n-1} (Q - alpha/2 + j gamma/2 + 2l/gamma)
// over prod_{(j,l) in S_{m,n}} (j gamma/2 + 2l/gamma),
// S_{m,n} = {1-m <= j <= m, 1-n <= l <= n} minus {(0,0),(m,n)}.
Complex r_mn(ResidueIndex idx, const BlockParams& params);

struct RecursionResult {
    QSeries series;
    // min over used (m,n) of |P^2 - P_{m,n}^2|; infinity when the sum is empty
    double min_pole_distance;
};

// Unique formal-series solution of the toric Zamolodchikov recursion
//   F = sum_{m,n>=1} q^{2mn} R_{gamma,m,n}(alpha) / (P^2 - P_{m,n}^2) F|_{P_{-m,n}}
//       + prod_k (1-q^{2k})^{-1},
// truncated at order K.
RecursionResult recursion_series_info(const BlockParams& params, int K);
QSeries recursion_series(const BlockParams& params, int K);

} // namespace torus_blocks
