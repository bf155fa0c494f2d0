#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orlicz/errors.hpp"
#include "orlicz/extremal_process.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/rng.hpp"

#include <cmath>
#include <limits>

using namespace orlicz;

namespace {

const double kInfP = std::numeric_limits<double>::infinity();

struct Instance {
    NormSpace space;
    Modulus modulus;
    OrliczFunction phi;
    Partition partition;
    BoundsReport report;
};

Instance make_instance(int n, double alpha, double p, double r_min = 0.0) {
    const NormSpace space = NormSpace::lp(n, kInfP, 1.0);
    const Modulus modulus = Modulus::power(alpha);
    const OrliczFunction phi = OrliczFunction::power(p);
    const Partition part = build_partition(
        space, modulus, 200, r_min > 0.0 ? std::optional<double>(r_min) : std::nullopt);
    const BoundsReport rep = total_bound(space, modulus, phi, part);
    return {space, modulus, phi, part, rep};
}

} // namespace

TEST_CASE("flat density of the identity instance") {
    // n=1, eta=id, phi=x^2/2: S_0 = 1/sqrt(2), K = 9, g = 1/(9 sqrt(2))
    auto inst = make_instance(1, 1.0, 2.0);
    const DensityG g = build_density(inst.space, inst.modulus, inst.phi, inst.report);
    const double flat = 1.0 / (9.0 * std::sqrt(2.0));
    CHECK(g.big_k() == doctest::Approx(9.0));
    for (double eps : {0.05, 0.3, 0.99})
        CHECK(g(eps) == doctest::Approx(flat).epsilon(1e-8));
    CHECK(g(1.5) == 0.0); // above eta(r)
    CHECK(g.total_mass() == doctest::Approx(flat).epsilon(1e-8));
    // antiderivative of a constant is linear
    CHECK(g.antiderivative(0.3) == doctest::Approx(0.3 * flat).epsilon(1e-8));
    CHECK(g.antiderivative(2.0) == doctest::Approx(g.total_mass()));
}

TEST_CASE("per-level mass matches K^{-1} S_k by independent quadrature") {
    for (auto& inst : {make_instance(1, 1.0, 2.0), make_instance(1, 0.5, 2.0, 1e-6),
                       make_instance(2, 0.5, 2.0, 1e-6), make_instance(1, 0.5, 3.0, 1e-6)}) {
        const DensityG g = build_density(inst.space, inst.modulus, inst.phi, inst.report);
        const Partition& part = g.partition();
        double total = 0.0;
        for (int k = 0; k < part.level_count(); ++k) {
            const double lo = std::max(part.lower_radius(k), part.upper_radius(k) * 1e-9);
            QuadOptions opt;
            opt.rel_tol = 1e-11;
            double mass =
                integrate_adaptive([&](double e) { return g(e); }, lo, part.upper_radius(k), opt)
                    .value;
            if (part.lower_radius(k) == 0.0) {
                // terminal levels keep integrable mass below any positive cut;
                // extend with dyadic blocks until it stops mattering
                double hi = lo;
                for (int j = 0; j < 200; ++j) {
                    const double nxt = hi * 0.5;
                    const double add =
                        integrate_adaptive([&](double e) { return g(e); }, nxt, hi, opt).value;
                    mass += add;
                    hi = nxt;
                    if (add <= 1e-13 * mass) break;
                }
            }
            CHECK(mass == doctest::Approx(g.level_mass(k)).epsilon(1e-8));
            total += g.level_mass(k);
        }
        CHECK(g.total_mass() == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("pointwise bound phi(g) <= K^{-1} psi(arg) on every level") {
    auto inst = make_instance(2, 0.5, 2.0, 1e-4);
    const DensityG g = build_density(inst.space, inst.modulus, inst.phi, inst.report);
    const OrliczFunction psi = conjugate(inst.phi);
    const Partition& part = g.partition();
    const int n = inst.space.dimension();
    for (int k = 0; k < part.level_count(); ++k) {
        const double lo = std::max(part.lower_radius(k), part.upper_radius(k) * 1e-6);
        const double hi = part.upper_radius(k);
        for (int i = 0; i < 100; ++i) {
            const double eps = lo * std::pow(hi / lo, (i + 0.5) / 100.0);
            const double lam = std::pow(inst.modulus.inverse(eps), n);
            const double arg = eps / (g.level_s(k) * lam); // r = 1
            CHECK(inst.phi(g(eps)) <= psi(arg) / g.big_k() * (1.0 + 1e-8));
        }
    }
}

TEST_CASE("path evaluation identities") {
    auto inst = make_instance(1, 1.0, 2.0);
    const DensityG g = build_density(inst.space, inst.modulus, inst.phi, inst.report);
    const Vec omega{0.4};
    const Vec origin{0.0};
    // X(0, omega) = 0
    CHECK(evaluate_path(g, omega, {origin})[0] == doctest::Approx(0.0));
    // X(omega, omega) = -G(d(omega, 0))
    const double d0 = metric(inst.space, inst.modulus, omega, origin);
    CHECK(evaluate_path(g, omega, {omega})[0] ==
          doctest::Approx(-g.antiderivative(d0)).epsilon(1e-12));
    // antipodal boundary point: X = total - G(d(omega, 0))
    const Vec anti{(0.4 - 1.0) / 0.4 * 0.4};
    CHECK(evaluate_path(g, omega, {anti})[0] ==
          doctest::Approx(g.total_mass() - g.antiderivative(d0)).epsilon(1e-10));

    CHECK_THROWS_AS(evaluate_path(g, Vec{2.0}, {origin}), OutOfBall);
    CHECK_THROWS_AS(evaluate_path(g, omega, {Vec{1.5}}), OutOfBall);
}

TEST_CASE("density is undefined on an infinite level") {
    auto inst = make_instance(2, 1.0, 2.0); // terminal divergence
    CHECK_THROWS_AS(build_density(inst.space, inst.modulus, inst.phi, inst.report),
                    InfiniteLevel);
}

TEST_CASE("per-omega sup identity with extremizers is exact") {
    for (auto& inst : {make_instance(1, 1.0, 2.0), make_instance(1, 0.5, 2.0, 1e-6),
                       make_instance(2, 0.5, 2.0, 1e-6)}) {
        const DensityG g = build_density(inst.space, inst.modulus, inst.phi, inst.report);
        const SupIdentityReport rep = verify_sup_identity(g, 64, 50, 777);
        CHECK(rep.target == doctest::Approx(g.total_mass()));
        CHECK(rep.max_abs_deviation <= 1e-8 * std::max(1.0, rep.target));
        CHECK(rep.empirical_mean_sup == doctest::Approx(rep.target).epsilon(1e-8));
    }
}

TEST_CASE("grid sup without extremizers never exceeds the target") {
    auto inst = make_instance(1, 0.5, 2.0, 1e-4);
    const DensityG g = build_density(inst.space, inst.modulus, inst.phi, inst.report);
    const auto omegas = inst.space.sample_ball(20, 5).points;
    const auto grid = inst.space.sample_ball(64, 6).points;
    for (const auto& omega : omegas) {
        const auto xs = evaluate_path(g, omega, grid);
        double mn = kInfP, mx = -kInfP;
        for (double x : xs) {
            mn = std::min(mn, x);
            mx = std::max(mx, x);
        }
        CHECK(mx - mn <= g.total_mass() * (1.0 + 1e-10));
    }
}

TEST_CASE("increment condition holds at a fixed pair and over sampled pairs") {
    auto inst = make_instance(1, 1.0, 2.0);
    const DensityG g = build_density(inst.space, inst.modulus, inst.phi, inst.report);

    // fixed pair (-1/2, 1/2): direct Monte Carlo against a 100x denser rerun
    const Vec s{-0.5}, t{0.5};
    const double d = metric(inst.space, inst.modulus, s, t);
    auto estimate = [&](int count, std::uint64_t seed) {
        Rng rng(seed);
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < count; ++i) {
            const Vec omega = inst.space.sample_point(rng);
            const double xs = g.antiderivative(metric(inst.space, inst.modulus, omega, s));
            const double xt = g.antiderivative(metric(inst.space, inst.modulus, omega, t));
            const double v = inst.phi(std::abs(xs - xt) / d);
            sum += v;
            sumsq += v * v;
        }
        const double mean = sum / count;
        return std::pair<double, double>(
            mean, std::sqrt(std::max(0.0, sumsq / count - mean * mean) / count));
    };
    const auto [e5, se5] = estimate(100000, 2024);
    const auto [e7, se7] = estimate(10000000, 2025);
    CHECK(e5 <= 1.0 + 3.0 * se5);
    CHECK(std::abs(e5 - e7) <= 3.0 * (se5 + se7));

    const IncrementReport rep = verify_increment_condition(g, inst.phi, 60, 20000, 31337, 2);
    CHECK(rep.pairs.size() == 60);
    for (const auto& p : rep.pairs) {
        CHECK(p.d > 0.0);
        CHECK(p.estimate <= 1.0 + 3.0 * p.std_error);
    }
    CHECK(rep.max_estimate <= 1.0 + 3.0 * rep.std_error_at_max);
}

TEST_CASE("increment verification is deterministic and jobs-independent") {
    auto inst = make_instance(2, 0.5, 2.0, 1e-3);
    const DensityG g = build_density(inst.space, inst.modulus, inst.phi, inst.report);
    const IncrementReport a = verify_increment_condition(g, inst.phi, 24, 4000, 99, 1);
    const IncrementReport b = verify_increment_condition(g, inst.phi, 24, 4000, 99, 4);
    REQUIRE(a.pairs.size() == b.pairs.size());
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        CHECK(a.pairs[i].estimate == b.pairs[i].estimate);
        CHECK(a.pairs[i].d == b.pairs[i].d);
    }
    const IncrementReport c = verify_increment_condition(g, inst.phi, 24, 4000, 100, 1);
    CHECK(a.pairs[0].estimate != c.pairs[0].estimate);
}

TEST_CASE("stratified pairs cover the representable levels") {
    auto inst = make_instance(1, 0.5, 2.0, 1e-6);
    const DensityG g = build_density(inst.space, inst.modulus, inst.phi, inst.report);
    const Partition& part = g.partition();
    const IncrementReport rep = verify_increment_condition(g, inst.phi, 80, 500, 4242, 2);
    // every level with eta^{-1}(r_k) above the resolution floor sees a pair
    int covered = 0;
    for (int k = 0; k < part.level_count(); ++k) {
        const double hi = part.upper_radius(k), lo = part.lower_radius(k);
        if (inst.modulus.inverse(std::sqrt(std::max(lo, hi / 4.0) * hi)) < 1e-12) continue;
        bool hit = false;
        for (const auto& p : rep.pairs)
            if (p.d > lo && p.d <= hi) hit = true;
        if (hit) ++covered;
    }
    CHECK(covered >= 15); // 20 representable levels at r_min = 1e-6
}
