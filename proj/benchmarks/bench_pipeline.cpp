#include <benchmark/benchmark.h>

#include "netprice/csv.hpp"
#include "netprice/importance.hpp"
#include "netprice/ingest.hpp"
#include "netprice/model.hpp"
#include "netprice/split.hpp"
#include "netprice/transform.hpp"
#include "netprice/tuning.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

using namespace netprice;
namespace nt = netprice::testing;

static void BM_LoadCsv(benchmark::State& state) {
    nt::TempDir dir;
    const auto files = nt::write_scorecard_files(dir.file("data"),
                                                 static_cast<std::size_t>(state.range(0)), 1,
                                                 500.0, 1);
    const ColumnSpec schema = ColumnSpec::defaults();
    for (auto _ : state) {
        benchmark::DoNotOptimize(load_table(files.paths[0], files.years[0], schema));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LoadCsv)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

static void BM_ApplyTransform(benchmark::State& state) {
    nt::TempDir dir;
    const auto files = nt::write_scorecard_files(dir.file("data"), 5000, 2, 500.0, 1);
    const ColumnSpec schema = ColumnSpec::defaults();
    ParseCounters counters;
    const RawTable table = load_table(files.paths[0], files.years[0], schema, counters);
    const auto built = ingest::build_labeled(table, schema.names());
    const FittedTransform transform = fit_transform_spec(built.labeled, true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_transform(transform, built.labeled));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(built.labeled.n_rows()));
}
BENCHMARK(BM_ApplyTransform)->Unit(benchmark::kMillisecond);

static void BM_TvsGridSearch(benchmark::State& state) {
    const Dataset train = nt::random_dataset(2000, 6, 7, 1.0);
    ParamGrid grid;
    grid.add("max_depth", {std::int64_t{4}, std::int64_t{6}, std::int64_t{8}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(tvs_fit(EstimatorKind::Tree, grid, train, 0.75, 42));
    }
}
BENCHMARK(BM_TvsGridSearch)->Unit(benchmark::kMillisecond);

static void BM_PermutationImportance(benchmark::State& state) {
    const Dataset data = nt::random_dataset(2000, 6, 9, 1.0);
    ParamMap params;
    params.set_int("n_estimators", 10);
    const Model model = fit_model(EstimatorKind::Forest, data, params);
    for (auto _ : state) {
        benchmark::DoNotOptimize(permutation_importance(model, data, 5, 42));
    }
}
BENCHMARK(BM_PermutationImportance)->Unit(benchmark::kMillisecond);
