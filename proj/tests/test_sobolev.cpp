#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orlicz/errors.hpp"
#include "orlicz/sobolev.hpp"

#include <cmath>
#include <limits>

using namespace orlicz;

namespace {

const double kInfP = std::numeric_limits<double>::infinity();

// f(u) = u_0 with its exact gradient; the desk-check function of the corpus.
TestFunction first_coordinate(int n) {
    TestFunction f;
    f.tag = "coordinate";
    f.value = [](const Vec& u) { return u[0]; };
    f.gradient = [n](const Vec&) {
        Vec g(static_cast<std::size_t>(n), 0.0);
        g[0] = 1.0;
        return g;
    };
    f.lipschitz_hint = 1.0; // dual l1 norm of e_0 on the linf ball
    f.locus_distance = [](const Vec&) { return kInfP; };
    return f;
}

TestFunction constant_fn(int n, double c) {
    TestFunction f;
    f.tag = "constant";
    f.value = [c](const Vec&) { return c; };
    f.gradient = [n](const Vec&) { return Vec(static_cast<std::size_t>(n), 0.0); };
    f.lipschitz_hint = 0.0;
    f.locus_distance = [](const Vec&) { return kInfP; };
    return f;
}

} // namespace

TEST_CASE("corpus gradients pass a central-difference check") {
    const NormSpace space = NormSpace::lp(2, 2.0, 1.0);
    const auto corpus = standard_corpus(space, 2026);
    REQUIRE(corpus.size() == 4);
    const auto pts = ball_grid(space, 100);
    const double h = 1e-6;
    for (const auto& f : corpus) {
        for (const auto& u : pts) {
            if (f.locus_distance(u) < 1e-3) continue;
            const Vec g = f.gradient(u);
            for (std::size_t i = 0; i < u.size(); ++i) {
                Vec up = u, dn = u;
                up[i] += h;
                dn[i] -= h;
                const double fd = (f.value(up) - f.value(dn)) / (2.0 * h);
                CHECK(fd == doctest::Approx(g[i]).epsilon(1e-4).scale(1.0));
            }
        }
    }
}

TEST_CASE("ball grid is deterministic, nested, and inside the ball") {
    const NormSpace space = NormSpace::lp(2, 1.0, 1.0);
    const auto a = ball_grid(space, 128);
    const auto b = ball_grid(space, 256);
    REQUIRE(a.size() == 128);
    REQUIRE(b.size() == 256);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    for (const auto& x : b) CHECK(space.norm(x) <= 1.0);
}

TEST_CASE("desk check of the gradient inequality on the linf square") {
    // f(u) = u_0, n = 2, r = 1, phi = x^3/3, A = B = 1:
    //   term1 = int_0^1 (2/3) eps^{-1/2} = 4/3,  term2 = phi(1) |T| / (n |B|) = 1/6,
    //   rhs = 6 (4/3 + 1/6) = 9, lhs -> 2.
    const NormSpace space = NormSpace::lp(2, kInfP, 1.0);
    const OrliczFunction phi = OrliczFunction::power(3.0);
    const SobolevCheck chk =
        check_inequality(space, phi, first_coordinate(2), 1.0, 1.0, 4096, 20000, 31);
    CHECK_FALSE(chk.term1_divergent);
    CHECK(chk.term1 == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    CHECK(chk.term2 == doctest::Approx(1.0 / 6.0).epsilon(1e-9)); // zero-variance MC
    CHECK(chk.term2_std_error <= 1e-8); // fp dust only; the integrand is constant
    CHECK(chk.rhs == doctest::Approx(9.0).epsilon(1e-6));
    CHECK(chk.lhs > 1.9);
    CHECK(chk.lhs <= 2.0 + 1e-12);
    CHECK(chk.margin >= 0.0);
}

TEST_CASE("constant functions give zero lhs") {
    const NormSpace space = NormSpace::lp(1, kInfP, 1.0);
    const OrliczFunction phi = OrliczFunction::power(2.0);
    const SobolevCheck chk =
        check_inequality(space, phi, constant_fn(1, 3.7), 0.5, 2.0, 256, 2000, 7);
    CHECK(chk.lhs == doctest::Approx(0.0));
    CHECK(chk.margin >= 0.0);
}

TEST_CASE("divergent radial term is reported, not failed") {
    // q = 2, n = 2: integrand ~ 1/eps for every A
    const NormSpace space = NormSpace::lp(2, kInfP, 1.0);
    const OrliczFunction phi = OrliczFunction::power(2.0);
    const SobolevCheck chk =
        check_inequality(space, phi, first_coordinate(2), 1.0, 1.0, 512, 2000, 7);
    CHECK(chk.term1_divergent);
    CHECK(std::isinf(chk.rhs));
    CHECK(std::isinf(chk.margin));
    CHECK_THROWS_AS(optimal_ab(space, phi, first_coordinate(2), 2000, 7), DivergentTerm1);
}

TEST_CASE("margins hold across the corpus and probe grid") {
    const double probes[] = {0.1, 1.0, 10.0};
    for (int n : {1, 2, 3}) {
        for (double lp : {1.0, 2.0, kInfP}) {
            if (n == 3 && lp != 2.0) continue; // n=3 spot cells only
            const NormSpace space = NormSpace::lp(n, lp, 1.0);
            for (double p : {2.0, 3.0}) {
                const OrliczFunction phi = OrliczFunction::power(p);
                for (const auto& f : standard_corpus(space, 555)) {
                    for (double a : probes)
                        for (double b : probes) {
                            const SobolevCheck chk =
                                check_inequality(space, phi, f, a, b, 512, 4000, 99);
                            if (chk.term1_divergent) continue;
                            CHECK(chk.margin >= -1e-6 * chk.rhs);
                        }
                }
            }
        }
    }
}

TEST_CASE("scale coherence: (2f, A, 2B) doubles both sides") {
    const NormSpace space = NormSpace::lp(2, kInfP, 1.0);
    const OrliczFunction phi = OrliczFunction::power(3.0);
    const TestFunction f = first_coordinate(2);
    TestFunction f2 = f;
    f2.value = [](const Vec& u) { return 2.0 * u[0]; };
    f2.gradient = [](const Vec&) { return Vec{2.0, 0.0}; };
    f2.lipschitz_hint = 2.0;
    const SobolevCheck base = check_inequality(space, phi, f, 0.7, 1.3, 1024, 4000, 17);
    const SobolevCheck doubled = check_inequality(space, phi, f2, 0.7, 2.6, 1024, 4000, 17);
    CHECK(doubled.term2 == doctest::Approx(base.term2).epsilon(1e-12));
    CHECK(doubled.rhs == doctest::Approx(2.0 * base.rhs).epsilon(1e-12));
    CHECK(doubled.lhs == doctest::Approx(2.0 * base.lhs).epsilon(1e-12));
    CHECK(doubled.margin == doctest::Approx(2.0 * base.margin).epsilon(1e-10));
}

TEST_CASE("refining the grid never decreases the lhs") {
    const NormSpace space = NormSpace::lp(2, 2.0, 1.0);
    const OrliczFunction phi = OrliczFunction::power(3.0);
    const TestFunction f = standard_corpus(space, 42)[2]; // trig
    double prev = 0.0;
    for (int grid : {64, 256, 1024, 4096}) {
        const SobolevCheck chk = check_inequality(space, phi, f, 1.0, 1.0, grid, 500, 3);
        CHECK(chk.lhs >= prev - 1e-15);
        prev = chk.lhs;
    }
}

TEST_CASE("holder desk check: linear function on the linf square at p = 3") {
    const NormSpace space = NormSpace::lp(2, kInfP, 1.0);
    const HolderCheck chk = holder_check(space, first_coordinate(2), 3.0, 512, 20000, 11);
    // max |s_0 - t_0| / ||s-t||_inf^{2/3} <= 2^{2/3}
    CHECK(chk.max_ratio <= std::pow(2.0, 2.0 / 3.0) * (1.0 + 1e-12));
    CHECK(chk.max_ratio > 1.2); // the grid should get reasonably close
    // constant integrand: bound 6 (2)^{2/3} / 8^{1/3} * 4^{1/3} = 6 * 2^{1/3}
    CHECK(chk.bound_constant ==
          doctest::Approx(6.0 * std::pow(2.0, 1.0 / 3.0)).epsilon(1e-9));
    CHECK(chk.relative_std_error <= 1e-12);
    CHECK(chk.max_ratio <= chk.bound_constant * (1.0 + 3.0 * chk.relative_std_error));
}

TEST_CASE("holder ratio of a constant function is zero") {
    const NormSpace space = NormSpace::lp(2, kInfP, 1.0);
    const HolderCheck chk = holder_check(space, constant_fn(2, 1.0), 3.0, 128, 500, 5);
    CHECK(chk.max_ratio == doctest::Approx(0.0));
}

TEST_CASE("large p recovers the Lipschitz constant on linear functions") {
    const NormSpace space = NormSpace::lp(2, kInfP, 1.0);
    const TestFunction f = first_coordinate(2);
    const HolderCheck chk = holder_check(space, f, 50.0, 1024, 2000, 23);
    // exponent 1 - n/p = 0.96: ratio approaches the Lipschitz constant 1
    CHECK(chk.max_ratio <= *f.lipschitz_hint * std::pow(2.0, 2.0 / 50.0) * (1.0 + 1e-12));
    CHECK(chk.max_ratio >= 0.5 * *f.lipschitz_hint);
}

TEST_CASE("holder bound holds across the corpus for p in {n+1, 2n, 5n}") {
    for (int n : {1, 2}) {
        const NormSpace space = NormSpace::lp(n, 2.0, 1.0);
        for (const auto& f : standard_corpus(space, 808)) {
            for (double p : {n + 1.0, 2.0 * n, 5.0 * n}) {
                if (!(p > n)) continue;
                const HolderCheck chk = holder_check(space, f, p, 512, 8000, 3);
                CHECK(chk.max_ratio <=
                      chk.bound_constant * (1.0 + 3.0 * chk.relative_std_error));
            }
        }
    }
}

TEST_CASE("exponent range is enforced") {
    const NormSpace space = NormSpace::lp(2, kInfP, 1.0);
    CHECK_THROWS_AS(holder_check(space, first_coordinate(2), 2.0, 64, 100, 1),
                    ExponentOutOfRange);
    CHECK_THROWS_AS(holder_optimal_a(2.0, 3, 1.0), ExponentOutOfRange);
}

TEST_CASE("closed-form A reduces to sqrt(upper) for p = 2, n = 1") {
    CHECK(holder_optimal_a(2.0, 1, 0.49) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(holder_optimal_a(2.0, 1, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("optimal (A, B) probes") {
    const NormSpace space = NormSpace::lp(2, kInfP, 1.0);
    const OrliczFunction phi = OrliczFunction::power(3.0);
    const TestFunction f = first_coordinate(2);
    const auto [a, b] = optimal_ab(space, phi, f, 20000, 13);
    // power family with a linear function: the heuristic center is the
    // closed-form pair and the grid keeps it
    const double a0 = holder_optimal_a(3.0, 2, 1.0);
    CHECK(a == doctest::Approx(a0).epsilon(1e-12));
    // B = ((1/(n|B|)) int ||grad f||_*^3)^{1/3} = (4/8)^{1/3}, zero-variance MC
    CHECK(b == doctest::Approx(std::pow(0.5, 1.0 / 3.0)).epsilon(1e-9));
    // no probe beats A = B = 1 by less than the tie tolerance
    const SobolevCheck at_opt = check_inequality(space, phi, f, a, b, 512, 4000, 19);
    const SobolevCheck at_one = check_inequality(space, phi, f, 1.0, 1.0, 512, 4000, 19);
    CHECK(at_opt.rhs <= at_one.rhs * (1.0 + 1e-9));
}
