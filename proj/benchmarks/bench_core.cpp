#include "cocyc/analysis.hpp"
#include "cocyc/cochain.hpp"
#include "cocyc/potential.hpp"
#include "cocyc/solvers.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace cocyc;

namespace {

Masses masses(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.2, 3.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = u(rng);
    return Masses(v);
}

Configuration points(int n, int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Configuration q(n, d);
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < d; ++c) q.point(j)(c) = g(rng) + 3.0 * j * (c == 0);
    return q;
}

}  // namespace

static void BM_ProjectPm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    const Masses m = masses(n, rng);
    const OneCochain z = coboundary0(points(n, 3, rng));
    for (auto _ : state) benchmark::DoNotOptimize(projectPm(z, m));
}
BENCHMARK(BM_ProjectPm)->RangeMultiplier(2)->Range(4, 64);

static void BM_CcResidual(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(2);
    const Masses m = masses(n, rng);
    const Configuration q = points(n, 3, rng);
    const PotentialParams p(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(ccResidual(q, m, p));
}
BENCHMARK(BM_CcResidual)->RangeMultiplier(2)->Range(4, 64);

static void BM_HessianComposed(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(3);
    const Masses m = masses(n, rng);
    const OneCochain z = coboundary0(points(n, 2, rng));
    const PotentialParams p(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(hessianComposed(z, m, p));
}
BENCHMARK(BM_HessianComposed)->DenseRange(3, 8);

static void BM_Solve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto method = static_cast<Method>(state.range(1));
    std::mt19937_64 rng(4);
    const Masses m = masses(n, rng);
    const PotentialParams p(1.0);
    SolveSettings s;
    s.method = method;
    for (auto _ : state) {
        s.rngSeed = rng();
        benchmark::DoNotOptimize(multistartSolve(n, 2, m, p, s, 4));
    }
}
BENCHMARK(BM_Solve)
    ->ArgsProduct({{3, 4, 5, 6},
                   {static_cast<long>(Method::FixedPoint), static_cast<long>(Method::Variational),
                    static_cast<long>(Method::Newton)}})
    ->Unit(benchmark::kMillisecond);

static void BM_MoultonChambers(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Masses m = Masses::equal(n);
    const PotentialParams p(1.0);
    const SolveSettings s;
    for (auto _ : state)
        for (const auto& order : moultonOrderings(n)) benchmark::DoNotOptimize(solveMoulton(order, m, p, s));
}
BENCHMARK(BM_MoultonChambers)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
