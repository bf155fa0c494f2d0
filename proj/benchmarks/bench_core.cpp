#include <benchmark/benchmark.h>

#include "orlicz/bounds.hpp"
#include "orlicz/extremal_process.hpp"
#include "orlicz/geometry.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/partition.hpp"
#include "orlicz/rng.hpp"

#include <cmath>
#include <limits>

using namespace orlicz;

namespace {
const double kInfP = std::numeric_limits<double>::infinity();
}

static void BM_NumericConjugate(benchmark::State& state) {
    const OrliczFunction phi = OrliczFunction::custom(
        [](double x) { return std::pow(x, 3.0) / 3.0; },
        [](double x) { return x * x; });
    const OrliczFunction psi = conjugate(phi);
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi(x));
        x = x < 1e3 ? x * 1.001 : 0.5;
    }
}
BENCHMARK(BM_NumericConjugate);

static void BM_LuxemburgNorm(benchmark::State& state) {
    const OrliczFunction phi = OrliczFunction::power(2.0);
    EmpiricalSample sample;
    Rng rng(17);
    for (int i = 0; i < state.range(0); ++i) sample.values.push_back(rng.uniform(0.0, 5.0));
    for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(phi, sample));
}
BENCHMARK(BM_LuxemburgNorm)->Arg(64)->Arg(4096);

static void BM_SampleBall(benchmark::State& state) {
    const NormSpace space = NormSpace::lp(static_cast<int>(state.range(0)), 2.0, 1.0);
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(space.sample_ball(256, seed++).points);
    state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_SampleBall)->Arg(2)->Arg(4)->Arg(6);

static void BM_SolveLevel(benchmark::State& state) {
    const NormSpace space = NormSpace::lp(2, kInfP, 1.0);
    const Modulus m = Modulus::power(0.5);
    const OrliczFunction phi = OrliczFunction::power(3.0);
    const Partition part = build_partition(space, m, 8);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_level(space, m, phi, part, 2));
}
BENCHMARK(BM_SolveLevel);

static void BM_TotalBound(benchmark::State& state) {
    const NormSpace space = NormSpace::lp(1, kInfP, 1.0);
    const Modulus m = Modulus::power(0.5);
    const OrliczFunction phi = OrliczFunction::power(3.0);
    const Partition part = build_partition(space, m);
    for (auto _ : state)
        benchmark::DoNotOptimize(total_bound(space, m, phi, part));
}
BENCHMARK(BM_TotalBound);

static void BM_PathEvaluation(benchmark::State& state) {
    const NormSpace space = NormSpace::lp(2, kInfP, 1.0);
    const Modulus m = Modulus::power(0.5);
    const OrliczFunction phi = OrliczFunction::power(2.0);
    const Partition part = build_partition(space, m, 200, 1e-6);
    const BoundsReport rep = total_bound(space, m, phi, part);
    const DensityG g = build_density(space, m, phi, rep);
    const auto omegas = space.sample_ball(64, 3).points;
    const auto points = space.sample_ball(64, 4).points;
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_path(g, omegas[i % omegas.size()], points));
        ++i;
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(points.size()));
}
BENCHMARK(BM_PathEvaluation);

BENCHMARK_MAIN();
