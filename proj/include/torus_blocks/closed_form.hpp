#pragma once

#include <utility>

#include "torus_blocks/block_params.hpp"
#include "torus_blocks/qseries.hpp"

namespace torus_blocks {

// A_{gamma,P,0}(alpha) in double-gamma form:
//   e^{i pi alpha^2/2} (gamma/2)^{gamma alpha/4} e^{-pi alpha P/2} Gamma(1-gamma^2/4)^{alpha/gamma}
//   x [Gg(Q-a/2)/Gg(Q-a)] [Gg(2/g+a/2)/Gg(2/g)] [Gg(Q-a/2-iP)/Gg(Q-iP)] [Gg(Q-a/2+iP)/Gg(Q+iP)].
Complex a0_closed(const BlockParams& params);

// The finite gamma-product form of A_{gamma,P,0} at alpha = -N gamma.
Complex a0_integer_N(int N, double gamma, Complex P);

// Shift constant Y_0(alpha,chi) of A_0(alpha-chi) = Y_0 A_0(alpha+chi).
Complex y0(Complex alpha, double chi, const BlockParams& params);

// W^-_chi and W^+_chi (w_pm evaluates both; the single accessors allow points
// where only one of the two is finite).
Complex w_minus(const BlockParams& params, double chi);
Complex w_plus(const BlockParams& params, double chi);
std::pair<Complex, Complex> w_pm(const BlockParams& params, double chi);

// (2 pi e^{i pi})^x as (2 pi)^x e^{i pi x} with the principal real power.
Complex two_pi_eipi_pow(Complex x);

struct EtaPmSeries {
    QSeries eta_minus; // leading coefficient (2 pi e^{i pi})^{4L/3 + 2l/3 + 2/3}
    QSeries eta_plus;  // leading coefficient (2 pi e^{i pi})^{4L/3 - 2l/3}
};

// q-series eta^{+-}_{chi,n}(alpha) from the Theta'(0)-power expansions,
// L = l_chi(l_chi+1)/chi^2.
EtaPmSeries eta_pm_series(const BlockParams& params, double chi, int K);

struct ShiftConstants {
    double chi;
    Complex l_chi;
    Complex w_minus, w_plus;
    Complex gamma01, gamma02; // connection coefficients at level n = 0
    EtaPmSeries eta;
};

ShiftConstants shift_constants(const BlockParams& params, double chi, int K);

} // namespace torus_blocks
