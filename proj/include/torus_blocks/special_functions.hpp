#pragma once

#include <complex>
#include <vector>

#include "torus_blocks/block_params.hpp"

namespace torus_blocks {

// Modular parameter tau in the upper half plane together with the nome
// q = exp(i pi tau), |q| < 1. Purely imaginary tau corresponds to q in (0,1).
struct ModularParam {
    Complex tau;
    Complex q;

    static ModularParam from_tau(Complex tau);
    static ModularParam from_q(Complex q);
    static ModularParam from_real_q(double q);

    bool real_q() const { return tau.real() == 0.0; }
};

// --- gamma function family -------------------------------------------------

// Gamma(z) for complex z (Lanczos; reflection for Re z < 1/2).
// Throws on nonpositive-integer poles.
Complex gamma_complex(Complex z);

// 1/Gamma(z); entire, zero at nonpositive integers.
Complex rgamma_complex(Complex z);

// log Gamma(z) up to an integer multiple of 2*pi*i (suitable for exponentiating).
Complex lgamma_complex(Complex z);

// Double gamma Gamma_{gamma/2}(z). Defined by the integral representation for
// Re z > 0 and extended to the rest of the plane by the shift equation
//   Gamma_{gamma/2}(z + chi) = sqrt(2 pi) chi^{chi z - 1/2} Gamma(chi z)^{-1} Gamma_{gamma/2}(z).
// Simple poles on the lattice {-n gamma/2 - 2m/gamma : n,m >= 0}.
Complex double_gamma(Complex z, double gamma);

// S_{gamma/2}(z) = Gamma_{gamma/2}(z) / Gamma_{gamma/2}(Q - z).
Complex s_gamma(Complex z, double gamma);

// Distance from z to the double-gamma pole lattice.
double double_gamma_pole_distance(Complex z, double gamma);

// --- theta functions ---------------------------------------------------------

// Theta_tau(u) = -2 q^{1/4} sin(pi u) prod_k (1-q^{2k})(1 - 2 cos(2 pi u) q^{2k} + q^{4k})
// and its u-derivatives of order 0..3, computed by differentiating the
// truncated product analytically. Valid for |Im u| < Im tau.
Complex jacobi_theta(Complex u, const ModularParam& m, int deriv = 0);

// Theta'''(0) / Theta'(0) = 24 pi^2 sum_k q^{2k}/(1-q^{2k})^2 - pi^2.
Complex theta_triple_prime_ratio(const ModularParam& m);

// log Theta_tau(u) under the branch with Im log = pi on real (0,1) for real q:
// log Theta = log sin(pi u) + log phi_tau(u), log sin normalized to 0 at u = 1/2.
Complex log_theta(Complex u, const ModularParam& m);

// Theta_tau(u)^c = exp(c log Theta_tau(u)) under the branch above.
// On (0,1) with q in (0,1) this equals e^{i c pi} |Theta(x)|^c.
Complex theta_frac_pow(Complex u, Complex c, const ModularParam& m);

// Dedekind eta(q) = q^{1/12} prod_k (1 - q^{2k}); q^{1/12} read as e^{i pi tau/12}.
Complex dedekind_eta(const ModularParam& m);

// prod_k (1 - q^{2k}) = q^{-1/12} eta(q).
Complex eta_norm(const ModularParam& m);

// --- Weierstrass elliptic function -------------------------------------------

enum class WpRoute { theta, series };

// wp(u) by either the theta-quotient formula or the trigonometric q-expansion.
Complex weierstrass_p(Complex u, const ModularParam& m, WpRoute route);

// Coefficients (ascending powers of w) of the polynomial wp~_n(w) with
// w = sin^2(pi u), where wp(u) = sum_n wp_n(u) q^n. Zero polynomial for odd n.
std::vector<double> wp_poly(int n);

// --- boundary reflection coefficient -----------------------------------------

// R-bar(alpha, 1, e^{-i pi gamma chi / 2 + pi gamma P}) in double-gamma form.
Complex reflection_coeff(Complex alpha, double chi, double P, double gamma);

} // namespace torus_blocks
