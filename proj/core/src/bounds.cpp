#include "orlicz/bounds.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/roots.hpp"

#include <cmath>
#include <limits>
#include <algorithm>

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow_int(double x, int n) {
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= x;
    return out;
}

} // namespace

double level_integrand(const NormSpace& space, const Modulus& modulus,
                       const OrliczFunction& psi, double c, double eps) {
    const int n = space.dimension();
    const double lam = pow_int(modulus.inverse(eps) / space.radius(), n);
    return lam / eps * psi(eps / (c * lam));
}

double level_integral(const NormSpace& space, const Modulus& modulus,
                      const OrliczFunction& psi, double lo, double hi, double c,
                      double quad_tol) {
    QuadOptions opt;
    opt.rel_tol = quad_tol;
    auto f = [&](double eps) { return level_integrand(space, modulus, psi, c, eps); };
    if (lo > 0.0 && lo / hi < 1e-3) {
        // eps = hi exp(-u) tames the endpoint imbalance of wide levels
        const double span = std::log(hi / lo);
        return integrate_adaptive(
                   [&](double u) {
                       const double eps = hi * std::exp(-u);
                       return f(eps) * eps;
                   },
                   0.0, span, opt)
            .value;
    }
    return integrate_adaptive(f, lo, hi, opt).value;
}

DyadicResult dyadic_integral(const std::function<double(double)>& f, double upper,
                             double quad_tol) {
    QuadOptions opt;
    opt.rel_tol = quad_tol;
    constexpr int kMaxBlocks = 60;
    constexpr int kGrowthWindow = 10;
    constexpr double kGrowthEdge = 1.0 - 1e-6;

    double total = 0.0;
    double prev = -1.0;
    double last = 0.0;
    double last_ratio = 0.0;
    int growth_streak = 0;
    int tiny_streak = 0;

    double hi = upper;
    for (int j = 1; j <= kMaxBlocks; ++j) {
        const double lo = upper * std::ldexp(1.0, -j);
        const double b = integrate_adaptive(f, lo, hi, opt).value;
        hi = lo;
        if (!std::isfinite(b)) return {kInf, true};
        total += b;
        if (prev > 0.0) {
            last_ratio = b / prev;
            growth_streak = last_ratio >= kGrowthEdge ? growth_streak + 1 : 0;
            if (growth_streak >= kGrowthWindow) return {kInf, true};
        }
        tiny_streak = (b <= 1e-13 * total) ? tiny_streak + 1 : 0;
        if (tiny_streak >= 3) return {total, false};
        prev = b;
        last = b;
    }
    if (last_ratio > 0.0 && last_ratio < kGrowthEdge) {
        // stable geometric decay: extrapolate the remaining tail
        return {total + last * last_ratio / (1.0 - last_ratio), false};
    }
    throw SlowConvergence("dyadic tail test certified neither convergence nor divergence");
}

LevelBracket analytic_bracket(const NormSpace& space, const Modulus& modulus,
                            const OrliczFunction& phi, const Partition& partition,
                            int k) {
    const int n = space.dimension();
    const double rn = pow_int(space.radius(), n);
    const double r_k = partition.upper_radius(k);
    LevelBracket b;
    b.lo = 0.25 * r_k * phi.inverse(2.0 * rn / pow_int(modulus.inverse(r_k), n));
    if (!partition.is_terminal_level(k) &&
        partition.labels[static_cast<std::size_t>(k)] == LevelLabel::I) {
        const double r_k1 = partition.lower_radius(k);
        b.hi = r_k1 * phi.inverse(rn / pow_int(modulus.inverse(r_k1), n));
    }
    return b;
}

LevelSolution solve_level(const NormSpace& space, const Modulus& modulus,
                          const OrliczFunction& phi, const Partition& partition,
                          int k, SolveOptions opt) {
    if (k < 0 || k >= partition.level_count() || partition.is_terminal_level(k))
        throw BracketFailure("solve_level requires an interior level");
    const OrliczFunction psi = conjugate(phi);
    const double lo_r = partition.lower_radius(k);
    const double hi_r = partition.upper_radius(k);
    auto integral = [&](double c) {
        return level_integral(space, modulus, psi, lo_r, hi_r, c, opt.quad_tol);
    };

    const LevelBracket br = analytic_bracket(space, modulus, phi, partition, k);
    double c_lo = br.lo;
    for (int i = 0; i < 200 && !(integral(c_lo) >= 1.0); ++i) c_lo *= 0.5;
    double c_hi = std::max(br.hi.value_or(c_lo), 2.0 * c_lo);
    bool bracketed = false;
    for (int i = 0; i < 1000; ++i) {
        if (integral(c_hi) < 1.0) {
            bracketed = true;
            break;
        }
        c_hi *= 2.0;
    }
    if (!bracketed) throw BracketFailure("level solve failed to bracket integral == 1");

    const double s = bisect_predicate([&](double c) { return integral(c) <= 1.0; },
                                      c_lo, c_hi, opt.root_tol);
    return {s, integral(s) - 1.0};
}

namespace {

// Probe scales for the terminal infimum. The plain 2^i ladder is widened
// below 1 and joined by scales anchored at the analytic lower bracket so that
// problems whose natural scale is far from 1 still get a convergent probe.
std::vector<double> terminal_probes(double anchor) {
    std::vector<double> probes;
    for (int i = -10; i <= 20; ++i) probes.push_back(anchor * std::ldexp(1.0, i));
    for (int i = -20; i <= 40; ++i) probes.push_back(std::ldexp(1.0, i));
    std::sort(probes.begin(), probes.end());
    return probes;
}

} // namespace

TerminalSolution solve_terminal(const NormSpace& space, const Modulus& modulus,
                                const OrliczFunction& phi, const Partition& partition,
                                SolveOptions opt) {
    if (!partition.terminal_m)
        throw BracketFailure("solve_terminal requires a terminal partition");
    const int m = *partition.terminal_m;
    const double r_m = partition.upper_radius(m);
    const OrliczFunction psi = conjugate(phi);
    auto limit_integral = [&](double c) {
        return dyadic_integral(
            [&](double eps) { return level_integrand(space, modulus, psi, c, eps); },
            r_m, opt.quad_tol);
    };

    const double anchor = analytic_bracket(space, modulus, phi, partition, m).lo;
    double c_ok = 0.0;
    bool any_converged = false;
    double largest_converged = 0.0;
    for (double c : terminal_probes(anchor)) {
        const DyadicResult res = limit_integral(c);
        if (res.diverged) continue;
        any_converged = true;
        largest_converged = c;
        if (res.value <= 1.0) {
            c_ok = c;
            break;
        }
    }
    if (!any_converged) return {kInf, false, 0.0};
    if (c_ok == 0.0) {
        double c = largest_converged;
        for (int i = 0; i < 200; ++i) {
            c *= 2.0;
            const DyadicResult res = limit_integral(c);
            if (!res.diverged && res.value <= 1.0) {
                c_ok = c;
                break;
            }
        }
        if (c_ok == 0.0)
            throw BracketFailure("terminal solve failed to reach integral <= 1");
    }
    double c_bad = c_ok;
    bool have_bad = false;
    for (int i = 0; i < 400; ++i) {
        c_bad *= 0.5;
        const DyadicResult res = limit_integral(c_bad);
        if (res.diverged || res.value > 1.0) {
            have_bad = true;
            break;
        }
        c_ok = c_bad;
    }
    if (!have_bad)
        throw BracketFailure("terminal solve failed to bracket the infimum");

    const double s = bisect_predicate(
        [&](double c) {
            const DyadicResult res = limit_integral(c);
            return !res.diverged && res.value <= 1.0;
        },
        c_bad, c_ok, opt.root_tol);
    const DyadicResult at_s = limit_integral(s);
    return {s, true, at_s.value - 1.0};
}

namespace {

double tail_value(const NormSpace& space, const Modulus& modulus,
                  const OrliczFunction& phi, double r_next) {
    const int n = space.dimension();
    const double rn = pow_int(space.radius(), n);
    return r_next * phi.inverse(rn / pow_int(modulus.inverse(r_next), n));
}

} // namespace

BoundsReport total_bound(const NormSpace& space, const Modulus& modulus,
                         const OrliczFunction& phi, const Partition& partition,
                         SolveOptions opt) {
    BoundsReport rep;
    rep.partition = partition;
    rep.truncated = partition.truncated;
    const int n = space.dimension();
    rep.lower_constant = 3.0 * (n + 2);

    const int levels = partition.level_count();
    rep.s_values.resize(static_cast<std::size_t>(levels));
    rep.residuals.resize(static_cast<std::size_t>(levels));
    rep.brackets.resize(static_cast<std::size_t>(levels));
    double solved_sum = 0.0;
    bool all_finite = true;
    for (int k = 0; k < levels; ++k) {
        rep.brackets[static_cast<std::size_t>(k)] =
            analytic_bracket(space, modulus, phi, partition, k);
        if (partition.is_terminal_level(k)) {
            const TerminalSolution ts = solve_terminal(space, modulus, phi, partition, opt);
            rep.s_values[static_cast<std::size_t>(k)] = ts.s;
            rep.residuals[static_cast<std::size_t>(k)] = ts.residual;
            if (!ts.finite) all_finite = false;
        } else {
            const LevelSolution ls = solve_level(space, modulus, phi, partition, k, opt);
            rep.s_values[static_cast<std::size_t>(k)] = ls.s;
            rep.residuals[static_cast<std::size_t>(k)] = ls.residual;
        }
        solved_sum += rep.s_values[static_cast<std::size_t>(k)];
    }

    rep.tail_bound = 0.0;
    if (partition.truncated && levels >= 1) {
        // Geometric tail from the I-step upper bracket values at the last radii;
        // with a single solved level the next radius is extrapolated.
        const double v_last = tail_value(space, modulus, phi,
                                         partition.lower_radius(levels - 1));
        double ratio = 0.0;
        if (levels >= 2) {
            const double v_prev =
                tail_value(space, modulus, phi, partition.lower_radius(levels - 2));
            ratio = v_prev > 0.0 ? v_last / v_prev : 0.0;
        } else if (v_last > 0.0) {
            const double r_next = partition.radii.back() *
                                  (partition.radii.back() / partition.radii.front());
            ratio = tail_value(space, modulus, phi, r_next) / v_last;
        }
        if (ratio >= 1.0 - 1e-9) {
            rep.tail_bound = kInf;
            all_finite = false;
        } else {
            rep.tail_bound = v_last * ratio / (1.0 - ratio);
        }
    }

    rep.sum = solved_sum + rep.tail_bound;
    rep.finite = all_finite && std::isfinite(rep.sum);
    if (!rep.finite) rep.sum = kInf;
    rep.lower_bound = rep.sum / rep.lower_constant;
    return rep;
}

bool embedding_criterion(const NormSpace& space, const OrliczFunction& phi,
                         std::span<const double> A_probes, double quad_tol) {
    if (A_probes.empty())
        throw BracketFailure("embedding_criterion needs at least one probe");
    const OrliczFunction psi = conjugate(phi);
    const int n = space.dimension();
    for (double a : A_probes) {
        if (!(a > 0.0)) continue;
        const DyadicResult res = dyadic_integral(
            [&](double eps) {
                const double en1 = std::pow(eps, n - 1);
                return psi(1.0 / (a * en1)) * en1;
            },
            space.radius(), quad_tol);
        if (!res.diverged) return true;
    }
    return false;
}

std::vector<double> one_dim_profile(const NormSpace& space, const Modulus& modulus,
                                    const OrliczFunction& phi, const Partition& partition) {
    if (space.dimension() != 1)
        throw DimensionMismatch("one_dim_profile is defined for n == 1 only");
    std::vector<double> out;
    out.reserve(partition.radii.size());
    for (double r_k : partition.radii)
        out.push_back(r_k * phi.inverse(1.0 / modulus.inverse(r_k)));
    return out;
}

} // namespace orlicz
