#pragma once

#include <complex>
#include <functional>

namespace torus_blocks {

struct QuadResult {
    std::complex<double> value;
    double err_est; // difference against the next-coarser level
};

// tanh-sinh rule on (0,1); level L uses step h = 2^{-L}. Handles integrable
// endpoint singularities. The error estimate compares against level L-1
// (computed from the same evaluations).
QuadResult tanh_sinh_01(const std::function<std::complex<double>(double)>& f, int level);

// Map to a general interval (a,b).
QuadResult tanh_sinh(const std::function<std::complex<double>(double)>& f, double a, double b,
                     int level);

} // namespace torus_blocks
