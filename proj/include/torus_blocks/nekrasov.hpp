#pragma once

#include <utility>
#include <vector>

#include "torus_blocks/block_params.hpp"
#include "torus_blocks/qseries.hpp"

namespace torus_blocks {

// Partition with weakly decreasing positive parts; cells carry 1-based
// coordinates (i,j), 1 <= j <= parts[i-1].
struct YoungDiagram {
    std::vector<int> parts;

    explicit YoungDiagram(std::vector<int> p = {});
    int size() const;
    int part(int i) const;            // lambda_i, 0 outside
    int transpose_part(int j) const;  // lambda'_j = #{i : lambda_i >= j}
    YoungDiagram transposed() const;
};

struct Cell {
    int i, j;
};

struct DiagramPair {
    YoungDiagram y1, y2;
};

// H_Y(s) = lambda'_j - i and V_Y(s) = lambda_i - j for the cell s = (i,j);
// s need not lie inside Y, in which case the values may be negative.
std::pair<int, int> arm_leg(const YoungDiagram& y, Cell s);

// E_{ij}(s,P) for s in Y_i of the pair:
//   +iP (i=1,j=2), -iP (i=2,j=1), no P term for i=j,
//   plus -gamma/2 H_{Y_j}(s) + 2/gamma (V_{Y_i}(s) + 1).
Complex e_factor(int i, int j, Cell s, const DiagramPair& pair, const BlockParams& params);

// All partitions of k (k >= 0), cached.
const std::vector<std::vector<int>>& partitions_of(int k);

// Number of pairs (Y1,Y2) with |Y1|+|Y2| = k.
long pair_partition_count(int k);

// Z_{gamma,P,k}(alpha): sum over diagram pairs of total size k of
// prod_{i,j} prod_{s in Y_i} (E-alpha)(Q-E-alpha) / (E(Q-E)).
Complex z_coeff(int k, const BlockParams& params);

// F^alpha_{gamma,P}(q) = (q^{-1/12} eta)^{1-alpha(Q-alpha/2)} (1 + sum_k Z_k q^{2k}),
// truncated at order K.
QSeries block_series(const BlockParams& params, int K);

} // namespace torus_blocks
