#include "orlicz/sobolev.hpp"
#include "orlicz/bounds.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/rng.hpp"

#include <cmath>
#include <limits>
#include <algorithm>

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double l2(const Vec& a) { return std::sqrt(dot(a, a)); }

} // namespace

std::vector<TestFunction> standard_corpus(const NormSpace& space, std::uint64_t seed) {
    const int n = space.dimension();
    Rng rng(seed);
    std::vector<TestFunction> out;

    auto smooth = [](const Vec&) { return kInf; };

    {
        Vec a(static_cast<std::size_t>(n));
        for (auto& c : a) c = rng.normal();
        const double na = l2(a);
        for (auto& c : a) c /= na;
        TestFunction f;
        f.tag = "linear";
        f.value = [a](const Vec& u) { return dot(a, u); };
        f.gradient = [a](const Vec&) { return a; };
        f.lipschitz_hint = space.dual_norm(a);
        f.locus_distance = smooth;
        out.push_back(std::move(f));
    }
    {
        TestFunction f;
        f.tag = "radial";
        f.value = [](const Vec& u) { return std::sqrt(1.0 + dot(u, u)); };
        f.gradient = [](const Vec& u) {
            const double s = std::sqrt(1.0 + dot(u, u));
            Vec g(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) g[i] = u[i] / s;
            return g;
        };
        f.locus_distance = smooth;
        out.push_back(std::move(f));
    }
    {
        struct Wave {
            Vec k;
            double c, theta;
        };
        std::vector<Wave> waves(3);
        for (auto& w : waves) {
            w.k.resize(static_cast<std::size_t>(n));
            for (auto& c : w.k) c = rng.uniform(-2.0, 2.0);
            w.c = rng.uniform(0.2, 1.0);
            w.theta = rng.uniform(0.0, 6.283185307179586);
        }
        TestFunction f;
        f.tag = "trig";
        f.value = [waves](const Vec& u) {
            double s = 0.0;
            for (const auto& w : waves) s += w.c * std::sin(dot(w.k, u) + w.theta);
            return s;
        };
        f.gradient = [waves, n](const Vec& u) {
            Vec g(static_cast<std::size_t>(n), 0.0);
            for (const auto& w : waves) {
                const double cs = w.c * std::cos(dot(w.k, u) + w.theta);
                for (std::size_t i = 0; i < g.size(); ++i) g[i] += cs * w.k[i];
            }
            return g;
        };
        f.locus_distance = smooth;
        out.push_back(std::move(f));
    }
    {
        Vec a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        for (auto& c : a) c = rng.normal();
        for (auto& c : b) c = rng.normal();
        const double alpha = rng.uniform(-0.2, 0.2);
        const double beta = rng.uniform(-0.2, 0.2);
        Vec diff(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a[i] - b[i];
        const double nd = std::max(l2(diff), 1e-12);
        TestFunction f;
        f.tag = "piecewise_linear";
        f.value = [a, b, alpha, beta](const Vec& u) {
            return std::max(dot(a, u) + alpha, dot(b, u) + beta);
        };
        f.gradient = [a, b, alpha, beta](const Vec& u) {
            return dot(a, u) + alpha >= dot(b, u) + beta ? a : b;
        };
        f.lipschitz_hint = std::max(space.dual_norm(a), space.dual_norm(b));
        f.locus_distance = [a, b, alpha, beta, nd](const Vec& u) {
            return std::abs(dot(a, u) + alpha - dot(b, u) - beta) / nd;
        };
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Vec> ball_grid(const NormSpace& space, int count) {
    // R_d additive recurrence: alpha_i = phi_d^{-(i+1)} with phi_d the unique
    // root of x^{d+1} = x + 1 in (1, 2).
    const int n = space.dimension();
    double phi_d = 1.5;
    for (int it = 0; it < 64; ++it)
        phi_d = std::pow(1.0 + phi_d, 1.0 / (n + 1.0));
    std::vector<double> alpha(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) alpha[static_cast<std::size_t>(i)] = std::pow(phi_d, -(i + 1.0));

    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(count));
    Vec u(static_cast<std::size_t>(n), 0.5);
    const double r = space.radius();
    long j = 0;
    while (static_cast<int>(pts.size()) < count && j < 100000000L) {
        ++j;
        Vec x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            u[static_cast<std::size_t>(i)] += alpha[static_cast<std::size_t>(i)];
            u[static_cast<std::size_t>(i)] -= std::floor(u[static_cast<std::size_t>(i)]);
            x[static_cast<std::size_t>(i)] =
                (2.0 * u[static_cast<std::size_t>(i)] - 1.0) * space.box_halfwidth(i);
        }
        if (space.norm(x) <= r) pts.push_back(std::move(x));
    }
    return pts;
}

namespace {

struct Term2 {
    double value = 0.0;
    double std_error = 0.0;
    double excluded_fraction = 0.0;
    double correction_bound = 0.0;
};

// (1 / (n |B(0,1)|)) int_T phi(||grad f||_* / B) du by Monte Carlo,
// = (r^n / n) E_lambda[...]; points within 1e-3 r of the declared locus
// contribute zero and are reported through the bounded correction.
Term2 monte_carlo_term2(const NormSpace& space, const OrliczFunction& phi,
                        const TestFunction& f, double B, int mc_count,
                        std::uint64_t seed) {
    const int n = space.dimension();
    const double factor = std::pow(space.radius(), n) / n;
    Rng rng(seed);
    double sum = 0.0, sumsq = 0.0, max_seen = 0.0;
    long excluded = 0;
    for (int i = 0; i < mc_count; ++i) {
        const Vec u = space.sample_point(rng);
        if (f.locus_distance(u) < 1e-3 * space.radius()) {
            ++excluded;
            continue;
        }
        const double v = phi(space.dual_norm(f.gradient(u)) / B);
        sum += v;
        sumsq += v * v;
        max_seen = std::max(max_seen, v);
    }
    Term2 out;
    const double mean = sum / mc_count;
    const double var = std::max(0.0, sumsq / mc_count - mean * mean);
    out.value = factor * mean;
    out.std_error = factor * std::sqrt(var / mc_count);
    out.excluded_fraction = static_cast<double>(excluded) / mc_count;
    const double cap = f.lipschitz_hint ? phi(*f.lipschitz_hint / B) : max_seen;
    out.correction_bound = factor * out.excluded_fraction * cap;
    return out;
}

// Radial term int_0^r psi(1/(A eps^{n-1})) eps^{n-1} d eps via the dyadic
// tail machinery; diverged results return +inf rather than throwing.
double term1_integral(const NormSpace& space, const OrliczFunction& psi, double A,
                      double quad_tol = 1e-9) {
    const int n = space.dimension();
    if (n == 1) return space.radius() * psi(1.0 / A);
    const DyadicResult res = dyadic_integral(
        [&](double eps) {
            const double en1 = std::pow(eps, n - 1);
            return psi(1.0 / (A * en1)) * en1;
        },
        space.radius(), quad_tol);
    return res.diverged ? kInf : res.value;
}

} // namespace

SobolevCheck check_inequality(const NormSpace& space, const OrliczFunction& phi,
                           const TestFunction& f, double A, double B,
                           int grid_count, int mc_count, std::uint64_t seed) {
    if (!(A > 0.0) || !(B > 0.0))
        throw ExponentOutOfRange("check_inequality needs A, B > 0");
    SobolevCheck chk;
    chk.A = A;
    chk.B = B;

    const auto grid = ball_grid(space, grid_count);
    double fmin = kInf, fmax = -kInf;
    for (const auto& u : grid) {
        const double v = f.value(u);
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
    }
    chk.lhs = fmax - fmin;

    const OrliczFunction psi = conjugate(phi);
    chk.term1 = term1_integral(space, psi, A);
    if (std::isinf(chk.term1)) {
        chk.term1_divergent = true;
        chk.rhs = kInf;
        chk.margin = kInf;
        return chk;
    }
    const Term2 t2 = monte_carlo_term2(space, phi, f, B, mc_count, seed);
    chk.term2 = t2.value;
    chk.term2_std_error = t2.std_error;
    chk.excluded_fraction = t2.excluded_fraction;
    chk.correction_bound = t2.correction_bound;
    chk.rhs = 6.0 * A * B * (chk.term1 + chk.term2);
    chk.margin = chk.rhs - chk.lhs;
    return chk;
}

HolderCheck holder_check(const NormSpace& space, const TestFunction& f, double p,
                         int grid_count, int mc_count, std::uint64_t seed) {
    const int n = space.dimension();
    if (!(p > n))
        throw ExponentOutOfRange("holder_check needs p > n");
    HolderCheck out;

    const auto grid = ball_grid(space, grid_count);
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f.value(grid[i]);
    const double expo = 1.0 - static_cast<double>(n) / p;
    Vec diff(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            for (std::size_t c = 0; c < diff.size(); ++c)
                diff[c] = grid[i][c] - grid[j][c];
            const double dist = space.norm(diff);
            if (dist == 0.0) continue;
            out.max_ratio =
                std::max(out.max_ratio, std::abs(vals[i] - vals[j]) / std::pow(dist, expo));
        }
    }

    Rng rng(seed);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < mc_count; ++i) {
        const Vec u = space.sample_point(rng);
        if (f.locus_distance(u) < 1e-3 * space.radius()) continue;
        const double v = std::pow(space.dual_norm(f.gradient(u)), p);
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / mc_count;
    const double var = std::max(0.0, sumsq / mc_count - mean * mean);
    const double ball_vol = space.unit_ball_volume() * std::pow(space.radius(), n);
    const double integral = ball_vol * mean; // int_T ||grad f||_*^p
    out.bound_constant = 6.0 * std::pow((p - 1.0) / (p - n), 1.0 - 1.0 / p) /
                         std::pow(n * space.unit_ball_volume(), 1.0 / p) *
                         std::pow(integral, 1.0 / p);
    const double mean_se = std::sqrt(var / mc_count);
    out.relative_std_error = mean > 0.0 ? mean_se / (p * mean) : 0.0;
    return out;
}

double holder_optimal_a(double p, int n, double upper) {
    const double q = p / (p - 1.0);
    const double expo = (1.0 - q) * (n - 1.0);
    if (expo <= -1.0)
        throw ExponentOutOfRange("closed-form A needs p > n");
    const double integral = std::pow(upper, expo + 1.0) / (expo + 1.0);
    return std::pow(integral, 1.0 / q);
}

std::pair<double, double> optimal_ab(const NormSpace& space, const OrliczFunction& phi,
                                     const TestFunction& f, int mc_count,
                                     std::uint64_t seed) {
    const int n = space.dimension();
    double a0 = 1.0, b0 = 1.0;
    const auto p_opt = phi.power_exponent();
    if (p_opt && *p_opt > n) {
        a0 = holder_optimal_a(*p_opt, n, space.radius());
        // closed-form B paired with holder_optimal_a
        Rng rng(seed);
        double sum = 0.0;
        for (int i = 0; i < mc_count; ++i) {
            const Vec u = space.sample_point(rng);
            if (f.locus_distance(u) < 1e-3 * space.radius()) continue;
            sum += std::pow(space.dual_norm(f.gradient(u)), *p_opt);
        }
        const double mean = sum / mc_count;
        b0 = std::pow(std::pow(space.radius(), n) / n * mean, 1.0 / *p_opt);
    }

    const OrliczFunction psi = conjugate(phi);
    // power family rescales term2 exactly: phi(x/B) = phi(x) / B^p
    const double t2_at_one =
        p_opt ? monte_carlo_term2(space, phi, f, 1.0, mc_count, seed).value : 0.0;

    // probes ordered center-out so flat directions keep the heuristic pair
    const std::vector<double> offsets = {0.0, 0.5, -0.5, 1.0, -1.0, 1.5, -1.5, 2.0, -2.0};
    double best_rhs = kInf;
    std::pair<double, double> best{a0, b0};
    bool any_finite = false;
    for (double da : offsets) {
        const double A = a0 * std::pow(10.0, da);
        const double t1 = term1_integral(space, psi, A);
        if (std::isinf(t1)) continue;
        for (double db : offsets) {
            const double B = b0 * std::pow(10.0, db);
            const double t2 = p_opt ? t2_at_one / std::pow(B, *p_opt)
                                    : monte_carlo_term2(space, phi, f, B, mc_count, seed).value;
            const double rhs = 6.0 * A * B * (t1 + t2);
            any_finite = true;
            // strict improvement only: rhs is exactly flat along the curve
            // B ~ A^{q-1} for power families, and ties must keep the center
            if (rhs < best_rhs * (1.0 - 1e-6)) {
                best_rhs = rhs;
                best = {A, B};
            }
        }
    }
    if (!any_finite)
        throw DivergentTerm1("term1 diverges for every probed A");
    return best;
}

} // namespace orlicz
