#include <benchmark/benchmark.h>

#include "netprice/binning.hpp"
#include "netprice/forest.hpp"
#include "netprice/gbt.hpp"
#include "netprice/linear.hpp"
#include "netprice/metrics.hpp"
#include "netprice/tree.hpp"
#include "synthetic.hpp"

using namespace netprice;
namespace nt = netprice::testing;

static void BM_ComputeBins(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Dataset data = nt::random_dataset(n, 8, 1, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_bins(data, 32));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ComputeBins)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_FitTree(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Dataset data = nt::random_dataset(n, 8, 2, 1.0);
    const BinningSpec bins = compute_bins(data, 32);
    ParamMap params;
    params.set_int("max_depth", 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_tree(data, params, bins));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FitTree)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_FitForest(benchmark::State& state) {
    const Dataset data = nt::random_dataset(3000, 8, 3, 1.0);
    ParamMap params;
    params.set_int("n_estimators", static_cast<int>(state.range(0)));
    params.set_int("max_depth", 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_forest(data, params));
    }
}
BENCHMARK(BM_FitForest)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_FitGbt(benchmark::State& state) {
    const Dataset data = nt::random_dataset(3000, 8, 4, 1.0);
    ParamMap params;
    params.set_int("maxIter", static_cast<int>(state.range(0)));
    params.set_int("max_depth", 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_gbt(data, params));
    }
}
BENCHMARK(BM_FitGbt)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_FitLinear(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Dataset data = nt::random_dataset(n, 8, 5, 1.0);
    ParamMap params;
    params.set_real("regParam", 0.01);
    params.set_real("elasticNetParam", 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_linear(data, params));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FitLinear)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_Metrics(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    rng::SplitMix64 gen(6);
    std::vector<double> y(n), yhat(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = gen.next_double() * 1e5;
        yhat[i] = y[i] + gen.next_double() * 100.0;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmse(y, yhat));
        benchmark::DoNotOptimize(r2(y, yhat));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Metrics)->Arg(100000);

BENCHMARK_MAIN();
