#pragma once

#include <complex>
#include <utility>

#include "torus_blocks/block_params.hpp"
#include "torus_blocks/qseries.hpp"

namespace torus_blocks {

struct HGFParams {
    Complex A, B, C;
};

// 2F1(A,B,C;w) on the closed unit disk. Inside |w| <= 0.9 the defining series
// is summed with the ratio recurrence a_{n+1}/a_n = (n+A)(n+B)/((n+1)(n+C));
// for 0.9 < |w| <= 1 the 1-w connection formula is used (needs C-A-B
// noninteger with positive real part there).
Complex hyp2f1(const HGFParams& p, Complex w);

// Connection coefficients Gamma_{n,1}, Gamma_{n,2} of the identity
// 2F1(A,B,1+A+B-C;1-w) = G1 v1(w) + G2 w^{1-C} v2(w).
std::pair<Complex, Complex> connection_coeffs(const HGFParams& p);

// Level-n hypergeometric parameters
//   A = -l/2 + i chi/2 sqrt(P^2+2n), B = -l/2 - i chi/2 sqrt(P^2+2n), C = 1/2 - l.
HGFParams hgf_level(const BlockParams& params, double chi, int n);

struct ParticularOptions {
    int order = 200;
    int max_order = 2000;
    double tail_tol = 1e-13;
};

// Power-series particular solution of the inhomogeneous hypergeometric
// equation with right-hand side w^X gtilde(w), X in {0, 1-C}:
//   f_part = -v1/(1-C) int_0^w v2 g (1-t)^{A+B-C} dt
//            + v2 w^{1-C}/(1-C) int_0^w v1 g t^{C-1} (1-t)^{A+B-C} dt,
// returned as the series f with w^X f = f_part. Requires Re(C-A-B) in (0,1)
// and noninteger C.
QSeries particular_solution(const QSeries& gtilde, const HGFParams& p, Complex X,
                            const ParticularOptions& opts = {});

// Series of 2F1(A,B,C;w) to the given order (used by particular_solution and tests).
QSeries hyp2f1_series(const HGFParams& p, int order);

} // namespace torus_blocks
