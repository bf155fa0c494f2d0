#include "orlicz/orlicz_function.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/roots.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>

namespace orlicz {

namespace {

// 64 log-spaced probe points on [1e-8, 1e8].
std::vector<double> probe_grid() {
    std::vector<double> g(64);
    for (int i = 0; i < 64; ++i)
        g[i] = std::pow(10.0, -8.0 + 16.0 * i / 63.0);
    return g;
}

} // namespace

void OrliczFunction::validate_shape() const {
    if (value_(0.0) != 0.0)
        throw NonConvexInput("phi(0) must be 0");
    const auto grid = probe_grid();
    double prev = 0.0;
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        vals[i] = value_(grid[i]);
        if (!(vals[i] > prev))
            throw NonConvexInput("phi must be strictly increasing");
        prev = vals[i];
    }
    for (std::size_t i = 0; i + 2 < grid.size(); ++i) {
        const double x1 = grid[i], x2 = grid[i + 1], x3 = grid[i + 2];
        const double chord = vals[i] + (vals[i + 2] - vals[i]) * (x2 - x1) / (x3 - x1);
        if (vals[i + 1] > chord * (1.0 + 1e-12) + 1e-300)
            throw NonConvexInput("phi failed the convexity secant test");
    }
}

OrliczFunction OrliczFunction::power(double p) {
    if (!(p > 1.0))
        throw NonConvexInput("power exponent must exceed 1");
    OrliczFunction f;
    f.value_ = [p](double x) { return std::pow(x, p) / p; };
    f.slope_ = [p](double x) { return std::pow(x, p - 1.0); };
    f.power_p_ = p;
    return f;
}

OrliczFunction OrliczFunction::custom(std::function<double(double)> value,
                                      std::function<double(double)> slope) {
    OrliczFunction f;
    f.value_ = std::move(value);
    f.slope_ = std::move(slope);
    f.validate_shape();
    return f;
}

OrliczFunction OrliczFunction::custom(std::function<double(double)> value,
                                      std::function<double(double)> slope,
                                      const OrliczFunction& analytic_conjugate) {
    OrliczFunction f = custom(std::move(value), std::move(slope));
    f.conjugate_ = std::make_shared<const OrliczFunction>(analytic_conjugate);
    return f;
}

double OrliczFunction::inverse(double y) const {
    if (y < 0.0)
        throw NonConvexInput("inverse argument must be nonnegative");
    if (y == 0.0) return 0.0;
    if (power_p_) return std::pow(*power_p_ * y, 1.0 / *power_p_);
    return solve_increasing(value_, 1.0, y, 1e-12);
}

double conjugate_maximizer(const OrliczFunction& phi, double x) {
    if (x <= 0.0) return 0.0;
    // phi' is nondecreasing with phi'(0+) = 0, so the maximizer solves
    // phi'(y) = x; the predicate form keeps plateau jumps at their left edge.
    return solve_increasing([&phi](double y) { return phi.slope(y); }, 1.0, x, 1e-12);
}

OrliczFunction conjugate(const OrliczFunction& phi) {
    if (phi.power_p_) return OrliczFunction::power(*phi.power_p_ / (*phi.power_p_ - 1.0));
    if (phi.conjugate_) return *phi.conjugate_;
    auto base = std::make_shared<const OrliczFunction>(phi);
    auto value = [base](double x) {
        if (x <= 0.0) return 0.0;
        const double y = conjugate_maximizer(*base, x);
        return x * y - (*base)(y);
    };
    auto slope = [base](double x) { return conjugate_maximizer(*base, x); };
    return OrliczFunction::custom(std::move(value), std::move(slope));
}

void EmpiricalSample::validate() const {
    if (values.empty())
        throw NonConvexInput("empirical sample must be nonempty");
    if (weights.empty()) return;
    if (weights.size() != values.size())
        throw DimensionMismatch("weights and values differ in length");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0)
            throw NonConvexInput("weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw NonConvexInput("weights must sum to 1 within 1e-12");
}

double luxemburg_norm(const OrliczFunction& phi, const EmpiricalSample& sample,
                      double rel_tol) {
    sample.validate();
    const std::size_t n = sample.values.size();
    double vmax = 0.0;
    for (double v : sample.values) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0.0) return 0.0;

    auto expectation = [&](double c) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = sample.weights.empty() ? 1.0 / static_cast<double>(n)
                                                    : sample.weights[i];
            if (w == 0.0) continue;
            s += w * phi(std::abs(sample.values[i]) / c);
        }
        return s;
    };
    return solve_decreasing(expectation, vmax, 1.0, rel_tol);
}

double young_gap(const OrliczFunction& phi, const OrliczFunction& psi,
                 double x, double y) {
    return phi(x) + psi(y) - x * y;
}

double young_gap(const OrliczFunction& phi, double x, double y) {
    return young_gap(phi, conjugate(phi), x, y);
}

} // namespace orlicz
