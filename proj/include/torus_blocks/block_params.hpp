#pragma once

#include <complex>
#include <stdexcept>

namespace torus_blocks {

using Complex = std::complex<double>;

// Physics parameter bundle (gamma, P, alpha). Derived quantities are always
// recomputed from the stored fields. gamma is restricted to (0,2) so that
// Q > 2 and the central charge exceeds 25.
struct BlockParams {
    double gamma = 1.0;
    Complex P = 0.0;
    Complex alpha = 0.0;

    BlockParams() = default;
    BlockParams(double gamma_, Complex P_, Complex alpha_) : gamma(gamma_), P(P_), alpha(alpha_) {
        if (!(gamma > 0.0 && gamma < 2.0))
            throw std::invalid_argument("BlockParams: gamma must lie in (0,2)");
    }

    double Q() const { return gamma / 2.0 + 2.0 / gamma; }
    double central_charge() const { return 1.0 + 6.0 * Q() * Q(); }
    Complex delta_alpha() const { return alpha / 2.0 * (Q() - alpha / 2.0); }
    Complex delta() const { return (Q() * Q() + P * P) / 4.0; }
    Complex l_chi(double chi) const { return chi * chi / 2.0 - alpha * chi / 2.0; }
};

} // namespace torus_blocks
