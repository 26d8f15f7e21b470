#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "torus_blocks/block_params.hpp"
#include "torus_blocks/special_functions.hpp"

namespace torus_blocks {

struct MCConfig {
    long samples = 200000;
    std::uint64_t seed = 1;
    int n_modes = 512;
    int grid_points = 4096;
    double f_cutoff = 1e-10;
    int batches = 50;
    int threads = 0; // 0: use TORUS_BLOCKS_THREADS, else 1
};

int resolve_threads(const MCConfig& cfg);

// Counter-based generator: the stream for sample i is a splitmix64 chain keyed
// by (seed, i), so draws are independent of batching and thread count.
struct SampleRng {
    std::uint64_t state;
    SampleRng(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next_u64();
    double next_uniform();                      // in (0,1)
    std::pair<double, double> next_normal_pair(); // Box-Muller
};

// One draw of the truncated Gaussian coefficient arrays.
// a,b realize Y_{inf,N}; (fa,fb) over f_index realize F_tau.
struct FieldSample {
    Eigen::VectorXd a, b;
    std::vector<std::pair<int, int>> f_index; // (n,m) with n <= N_modes, q^{nm} >= cutoff
    Eigen::VectorXd fa, fb;
    double q = 0.0;

    double y_inf(double x) const;
    double f_tau(double x) const;
    double y_tau(double x) const { return y_inf(x) + f_tau(x); }
};

std::vector<std::pair<int, int>> f_tau_index_set(double q, const MCConfig& cfg);

FieldSample sample_field(SampleRng& rng, const ModularParam& m, const MCConfig& cfg);

// Truncated-field variances (x-independent): E[Y_{inf,N}^2] and E[F_tau^2].
double y_inf_variance(const MCConfig& cfg);
double f_tau_variance(double q, const MCConfig& cfg);

enum class GmcField { torus, cylinder }; // Y_tau vs Y_inf

// Riemann midpoint sum of weight(x) exp((gamma/2) Y_N(x) - (gamma^2/8) E[Y_N^2])
// over the graded grid x = s^2(3-2s).
Complex gmc_integral(const FieldSample& sample, const std::function<Complex(double)>& weight,
                     double gamma, const MCConfig& cfg, GmcField field = GmcField::torus);

struct MCEstimate {
    Complex value;
    double stderr_est;
};

// A^q_{gamma,P}(alpha) = q^{(-a g - 2a/g + 2)/12} eta^{a g + 2a/g - 3a^2/2 - 2}
//   e^{i pi a^2 / 2} E[ (int |Theta(x)|^{-a g/2} e^{pi g P x} dGMC)^{-a/g} ].
MCEstimate estimate_A_q(const BlockParams& params, const ModularParam& m, const MCConfig& cfg);

// G = (q^{-1/12} eta)^{1 - a(Q - a/2)} A^q / A_0, A_0 in closed form.
MCEstimate estimate_G(const BlockParams& params, const ModularParam& m, const MCConfig& cfg);

// Extension of A^q to alpha in (Q, 2Q) via the reflection coefficient.
MCEstimate estimate_reflected_A(const BlockParams& params, const ModularParam& m,
                                const MCConfig& cfg);

// Deterministic prefactor of the reflected extension (exposed for cross-checks).
Complex reflected_prefactor(const BlockParams& params, const ModularParam& m);

} // namespace torus_blocks
