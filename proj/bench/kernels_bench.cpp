// Serial reference kernels against their OpenMP versions, and the serial
// experiment runner against the parallel one.

#include <cmath>

#include <benchmark/benchmark.h>

#include "rainbow/harness.hpp"
#include "rainbow/instance.hpp"
#include "rainbow/kernels.hpp"
#include "rainbow/tree_construct.hpp"

using namespace rainbow;

namespace {

struct Points {
    Instance inst;
    std::vector<int> order;
};

Points points(int n) {
    auto inst = gen_euclidean(n, 1.0, SeedSpec{7});
    auto order = kernels::upward_order(inst.points());
    return {std::move(inst), std::move(order)};
}

void BM_k_shortest_serial(benchmark::State& st) {
    const auto p = points(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::k_shortest_upward_serial(p.inst.points(), p.order, 20));
    st.SetComplexityN(st.range(0));
}

void BM_k_shortest_omp(benchmark::State& st) {
    const auto p = points(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::k_shortest_upward_omp(p.inst.points(), p.order, 20, 0));
    st.SetComplexityN(st.range(0));
}

void BM_level_edges_serial(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto p = points(n);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::level_edges_serial(p.inst.points(), p.order, 1.0, 2.0, level_count(n)));
}

void BM_level_edges_omp(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto p = points(n);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::level_edges_omp(p.inst.points(), p.order, 1.0, 2.0, level_count(n), 0));
}

ExperimentConfig tree_experiment() {
    ExperimentConfig c;
    c.kind = "tree-construct";
    c.n_grid = {500, 1000};
    c.seeds = 4;
    return c;
}

void BM_experiment_serial(benchmark::State& st) {
    const auto c = tree_experiment();
    for (auto _ : st) benchmark::DoNotOptimize(run_experiment_serial(c));
}

void BM_experiment_omp(benchmark::State& st) {
    const auto c = tree_experiment();
    for (auto _ : st) benchmark::DoNotOptimize(run_experiment(c));
}

}  // namespace

BENCHMARK(BM_k_shortest_serial)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_k_shortest_omp)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_level_edges_serial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_level_edges_omp)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_experiment_serial)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK(BM_experiment_omp)->Unit(benchmark::kMillisecond)->Iterations(2)->UseRealTime();

BENCHMARK_MAIN();
