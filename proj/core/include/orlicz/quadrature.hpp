#ifndef ORLICZ_QUADRATURE_HPP
#define ORLICZ_QUADRATURE_HPP

#include <functional>

namespace orlicz {

struct QuadOptions {
    double rel_tol = 1e-9;
    int max_depth = 48;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Adaptive interval bisection with an embedded Simpson pair (one-panel rule
// against its two-panel refinement, Richardson-extrapolated). Non-finite
// integrand values propagate as an infinite result instead of throwing, so
// callers solving "integral == 1" can treat overflow as "definitely above".
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, QuadOptions opt = {});

} // namespace orlicz

#endif
