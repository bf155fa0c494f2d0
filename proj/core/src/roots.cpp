#include "orlicz/roots.hpp"
#include "orlicz/errors.hpp"

#include <cmath>
#include <algorithm>

namespace orlicz {

double bisect_predicate(const std::function<bool(double)>& pred,
                        double lo, double hi, double rel_tol, int max_iter) {
    if (pred(lo)) return lo;
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // bracket exhausted in doubles
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= rel_tol * std::max(std::abs(hi), 1e-300)) break;
    }
    return hi;
}

namespace {

// Expands a bracket for "f crosses target" with f monotone. `rising` selects
// the direction of monotonicity.
struct Bracket {
    double lo, hi;
};

Bracket grow_bracket(const std::function<double(double)>& f, double seed,
                     double target, bool rising, double limit) {
    double lo = seed, hi = seed;
    const double fs = f(seed);
    const bool above = fs >= target;
    // For rising f: need f(lo) <= target <= f(hi).
    // For falling f: need f(lo) >= target >= f(hi).
    if (rising == !above) {
        // seed sits on the lo side; push hi up
        for (int i = 0; i < 1100; ++i) {
            hi *= 2.0;
            if (hi > limit) throw OverflowRange("bracket search passed range limit");
            const double v = f(hi);
            if (rising ? v >= target : v <= target) return {hi / 2.0, hi};
        }
        throw BracketFailure("doubling failed to bracket target");
    }
    // seed sits on the hi side; push lo down
    (void)hi;
    for (int i = 0; i < 1100; ++i) {
        lo *= 0.5;
        if (lo < 1e-300) return {0.0, 2.0 * lo};
        const double v = f(lo);
        if (rising ? v <= target : v >= target) return {lo, 2.0 * lo};
    }
    throw BracketFailure("halving failed to bracket target");
}

} // namespace

double solve_increasing(const std::function<double(double)>& f,
                        double seed, double target, double rel_tol, double limit) {
    const Bracket b = grow_bracket(f, seed, target, true, limit);
    return bisect_predicate([&](double x) { return f(x) >= target; }, b.lo, b.hi, rel_tol);
}

double solve_decreasing(const std::function<double(double)>& f,
                        double seed, double target, double rel_tol, double limit) {
    const Bracket b = grow_bracket(f, seed, target, false, limit);
    return bisect_predicate([&](double x) { return f(x) <= target; }, b.lo, b.hi, rel_tol);
}

} // namespace orlicz
