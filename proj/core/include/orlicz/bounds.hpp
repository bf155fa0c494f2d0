#ifndef ORLICZ_BOUNDS_HPP
#define ORLICZ_BOUNDS_HPP

#include "orlicz/geometry.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/partition.hpp"

#include <optional>
#include <vector>

namespace orlicz {

struct SolveOptions {
    double quad_tol = 1e-9; // relative tolerance of the level quadrature
    double root_tol = 1e-10; // relative tolerance of the bisection on c
};

// Integrand of the level equation at scale c:
//   eps -> (lam(eps)/eps) * psi(eps / (c * lam(eps))),  lam(eps) = eta^{-1}(eps)^n / r^n.
double level_integrand(const NormSpace& space, const Modulus& modulus,
                       const OrliczFunction& psi, double c, double eps);

// Integral of the level integrand over [lo, hi]; switches to the
// log-substitution eps = hi * exp(-u) when lo/hi < 1e-3.
double level_integral(const NormSpace& space, const Modulus& modulus,
                      const OrliczFunction& psi, double lo, double hi, double c,
                      double quad_tol);

// Integral over (0, upper] evaluated as a limit over dyadic blocks
// [upper 2^{-j}, upper 2^{-j+1}], j up to 60, with geometric extrapolation of
// the remaining tail. Divergence is certified by block ratios staying at or
// above 1 - 1e-6 for 10 consecutive blocks; the result is then +inf. Throws
// SlowConvergence when neither verdict is reached inside the block budget.
struct DyadicResult {
    double value = 0.0;
    bool diverged = false;
};
DyadicResult dyadic_integral(const std::function<double(double)>& f, double upper,
                             double quad_tol);

struct LevelSolution {
    double s = 0.0;       // the solved level constant
    double residual = 0.0; // defining integral at s, minus 1
};

struct LevelBracket {
    double lo = 0.0;              // (1/4) r_k phi^{-1}(2 r^n / eta^{-1}(r_k)^n)
    std::optional<double> hi;     // r_{k+1} phi^{-1}(r^n / eta^{-1}(r_{k+1})^n), I steps only
};

// Solves the interior level equation integral == 1 by bisection on the
// strictly decreasing map c -> integral(c). The initial bracket starts at the
// lower bracket value and doubles the upper end until the integral drops
// below 1 (BracketFailure after 1e3 doublings).
LevelSolution solve_level(const NormSpace& space, const Modulus& modulus,
                          const OrliczFunction& phi, const Partition& partition,
                          int k, SolveOptions opt = {});

// Terminal level over (0, r_m] in the eta'(0) < inf regime: the infimum of
// c > 0 with limit integral <= 1, or (+inf, false) when the dyadic tail test
// certifies divergence at every probe scale.
struct TerminalSolution {
    double s = 0.0;
    bool finite = true;
    double residual = 0.0; // 0 when infinite
};
TerminalSolution solve_terminal(const NormSpace& space, const Modulus& modulus,
                                const OrliczFunction& phi, const Partition& partition,
                                SolveOptions opt = {});

LevelBracket analytic_bracket(const NormSpace& space, const Modulus& modulus,
                            const OrliczFunction& phi, const Partition& partition,
                            int k);

struct BoundsReport {
    Partition partition;
    std::vector<double> s_values;   // +inf allowed at the terminal index
    std::vector<double> residuals;
    std::vector<LevelBracket> brackets;
    double sum = 0.0;               // sum of S_k plus the tail estimate (or +inf)
    double lower_bound = 0.0;       // sum / (3 (n + 2))
    double lower_constant = 0.0;    // 3 (n + 2)
    bool finite = true;
    double tail_bound = 0.0;        // geometric estimate for truncated levels
    bool truncated = false;
};

// Solves every level (terminal included), sums, and estimates the truncated
// tail geometrically from the I-step upper bracket values
// r_{k+1} phi^{-1}(r^n / eta^{-1}(r_{k+1})^n). The upper constant of the
// two-sided bound is not numerically instantiated; the report carries the sum
// itself as the upper-bound scale and the explicit lower constant 3(n+2).
BoundsReport total_bound(const NormSpace& space, const Modulus& modulus,
                         const OrliczFunction& phi, const Partition& partition,
                         SolveOptions opt = {});

// True iff some probe A certifies convergence of
// int_0^r psi(1 / (A eps^{n-1})) eps^{n-1} d eps  (dyadic tail test).
bool embedding_criterion(const NormSpace& space, const OrliczFunction& phi,
                         std::span<const double> A_probes, double quad_tol = 1e-9);

// Diagnostic sequence r_k phi^{-1}(1 / eta^{-1}(r_k)) for the 1-D case;
// comparable with the solved S_k, not equal. Throws DimensionMismatch if
// the space is not one-dimensional.
std::vector<double> one_dim_profile(const NormSpace& space, const Modulus& modulus,
                                    const OrliczFunction& phi, const Partition& partition);

} // namespace orlicz

#endif
