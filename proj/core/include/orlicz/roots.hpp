#ifndef ORLICZ_ROOTS_HPP
#define ORLICZ_ROOTS_HPP

#include <functional>

namespace orlicz {

// Bracketing + bisection helpers for monotone maps. All solvers work on a
// predicate whose truth set is a right half-line [x*, inf); they converge to
// the left edge x*, which also resolves plateaus of the underlying function
// to their leftmost point.

// Smallest x in [lo, hi] with pred(x) true. Requires pred(hi); pred(lo) may
// already hold, in which case lo is returned. Terminates when the bracket
// width falls below rel_tol relative to the midpoint.
double bisect_predicate(const std::function<bool(double)>& pred,
                        double lo, double hi, double rel_tol,
                        int max_iter = 2000);

// Solve f(x) = target for nondecreasing f on a bracket found by doubling /
// halving from `seed`. Throws OverflowRange if the upward search passes
// `limit` (default 1e300) without reaching the target.
double solve_increasing(const std::function<double(double)>& f,
                        double seed, double target, double rel_tol,
                        double limit = 1e300);

// Solve f(x) = target for nonincreasing f; bracket grown from `seed`.
double solve_decreasing(const std::function<double(double)>& f,
                        double seed, double target, double rel_tol,
                        double limit = 1e300);

} // namespace orlicz

#endif
