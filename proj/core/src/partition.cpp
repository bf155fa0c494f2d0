#include "orlicz/partition.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/roots.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace orlicz {

namespace {

double scale_ratio(const Modulus& modulus, double eps) {
    return eps / modulus.inverse(eps);
}

void probe_monotonicity(const Modulus& modulus, double r0) {
    double prev = scale_ratio(modulus, r0 * 1e-12);
    for (int i = 1; i < 64; ++i) {
        const double eps = r0 * std::pow(10.0, -12.0 + 12.0 * i / 63.0);
        const double cur = scale_ratio(modulus, eps);
        if (cur > prev * (1.0 + 1e-9))
            throw NonConcaveModulus("eps/eta^{-1}(eps) must be nonincreasing");
        prev = cur;
    }
}

// Leftmost eps with scale_ratio(eps) <= target, or 0 when every eps
// qualifies (finite eta'(0) at or below the target).
double doubling_root(const Modulus& modulus, double r_k, double target) {
    if (modulus.finite_derivative_at_zero() &&
        modulus.derivative_at_zero() <= target * (1.0 + 1e-12))
        return 0.0;
    double lo = r_k;
    for (int i = 0; i < 1200; ++i) {
        lo *= 0.5;
        if (lo == 0.0) return 0.0;
        if (scale_ratio(modulus, lo) > target) {
            return bisect_predicate(
                [&](double eps) { return scale_ratio(modulus, eps) <= target; },
                lo, 2.0 * lo, 1e-12);
        }
    }
    return 0.0;
}

} // namespace

Partition build_partition(const NormSpace& space, const Modulus& modulus,
                          int k_max, std::optional<double> r_min_opt) {
    if (k_max < 1) throw NonConcaveModulus("k_max must be >= 1");
    Partition part;
    const double r0 = modulus(space.radius());
    probe_monotonicity(modulus, r0);
    const double r_min = r_min_opt.value_or(1e-15 * r0);
    if (!(r_min > 0.0)) throw NonConcaveModulus("r_min must be positive");

    part.radii.push_back(r0);
    for (int k = 0; k < k_max; ++k) {
        const double r_k = part.radii.back();
        const double target = 2.0 * scale_ratio(modulus, r_k);
        const double c_k = doubling_root(modulus, r_k, target);
        const double half = 0.5 * r_k;
        if (c_k == 0.0) {
            part.labels.push_back(LevelLabel::J);
            part.terminal_m = k;
            return part;
        }
        // The bisection lands on the satisfying side, so a genuine tie
        // reports c_k >= half; both rules then agree and the step is I.
        if (c_k >= half * (1.0 - 1e-12)) {
            part.radii.push_back(half);
            part.labels.push_back(LevelLabel::I);
        } else {
            part.radii.push_back(c_k);
            part.labels.push_back(LevelLabel::J);
        }
        if (part.radii.back() < r_min) {
            part.truncated = true;
            return part;
        }
    }
    part.truncated = true;
    return part;
}

void write_partition_csv(std::ostream& os, const Partition& partition) {
    os << "k,r_k,label\n";
    char buf[64];
    for (std::size_t k = 0; k < partition.radii.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", partition.radii[k]);
        const char label = k < partition.labels.size()
                               ? static_cast<char>(partition.labels[k])
                               : '-';
        os << k << ',' << buf << ',' << label << '\n';
    }
}

} // namespace orlicz
