#include <benchmark/benchmark.h>

#include "rhomega/experiments.hpp"
#include "rhomega/optimize.hpp"
#include "rhomega/oracle.hpp"
#include "rhomega/spectral.hpp"

namespace {

rhomega::Matrix random_instance(int n, std::uint64_t seed) {
    rhomega::CounterRng rng(seed, static_cast<std::uint64_t>(n), 0);
    return rhomega::random_matrix(n, rng, rhomega::EntryDistribution::uniform_int(1, 9));
}

void BM_Perron(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const rhomega::Matrix a = random_instance(n, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rhomega::perron(a).rho);
    }
}
BENCHMARK(BM_Perron)->Arg(5)->Arg(25)->Arg(50)->Arg(100)->Arg(200);

void BM_MaximizeRho(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const rhomega::Matrix a = random_instance(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rhomega::maximize_rho(a).rho);
    }
}
BENCHMARK(BM_MaximizeRho)->Arg(5)->Arg(25)->Arg(50)->Arg(100)->Arg(200);

void BM_OracleExtremes(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const rhomega::Matrix a = random_instance(n, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rhomega::oracle_extremes(a).max_rho);
    }
}
BENCHMARK(BM_OracleExtremes)->Arg(2)->Arg(3)->Arg(4);

void BM_FullyIndecomposable(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    rhomega::CounterRng rng(4, static_cast<std::uint64_t>(n), 0);
    std::vector<double> e(static_cast<std::size_t>(n) * n);
    for (double& v : e) v = rng.next_int(0, 3) == 0 ? 0.0 : 1.0;
    const rhomega::Matrix a(n, e);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rhomega::is_fully_indecomposable(a));
    }
}
BENCHMARK(BM_FullyIndecomposable)->Arg(10)->Arg(50)->Arg(100);

} // namespace

BENCHMARK_MAIN();
