#pragma once

#include <functional>
#include <vector>

#include "torus_blocks/qseries.hpp"
#include "torus_blocks/special_functions.hpp"
#include "torus_blocks/verify_report.hpp"

namespace torus_blocks {

struct DFConfig {
    int N = 1;
    int quad_level = 9;      // tanh-sinh level per axis
    double tolerance = 1e-6; // quadrature error tolerance
};

struct DFResult {
    Complex value;
    double err_est;
};

// Symmetric N-fold integrand (without prefactor and phase):
//   prod_{i<j} |Theta(x_i-x_j)|^{-g^2/2} prod_i |Theta(x_i)|^{-a g/2} e^{pi g P x_i},
// alpha = -N gamma with N = xs.size().
Complex df_integrand(double gamma, Complex P, const ModularParam& m,
                     const std::vector<double>& xs);

// A^q_{gamma,P}(-N gamma) by N-fold quadrature of the Dotsenko-Fateev integral
//   q^{a^2/24 - a Q/12 + 1/6} eta^{5 a g/4 + 2a/g - 5a^2/4 - 2}
//   int prod_{i<j} |Theta(x_i-x_j)|^{-g^2/2} prod_i Theta(x_i)^{-a g/2} e^{pi g P x_i} dx,
// with the integrand phase matching the fractional-power rule of the GMC route.
// Supports N = 1, 2 and complex momentum P.
DFResult df_A_q(const DFConfig& cfg, double gamma, Complex P, double q);

struct ExtractOptions {
    int nodes = 0;          // 0: 2(K+1)
    bool even_only = false; // restrict the fit basis to even powers
};

struct ExtractResult {
    QSeries coeffs;
    double condition_number;
    double max_residual;
};

// Least-squares polynomial fit of evaluator(q) at Chebyshev-spaced nodes on
// (0, q_max]; throws when the scaled Vandermonde condition number exceeds 1e10.
ExtractResult extract_q_coeffs(const std::function<Complex(double)>& evaluator, int K,
                               double q_max, const ExtractOptions& opts = {});

// Residual of A^q(P_{m,n}) = q^{2nm} e^{-i pi alpha gamma m/2} A^q(P_{-m,n})
// for alpha = -N gamma.
VerifyReport verify_momentum_shift(const DFConfig& cfg, double gamma, int m, int n, double q);

} // namespace torus_blocks
