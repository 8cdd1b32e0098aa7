#include "monicdyn/search.hpp"

#include <benchmark/benchmark.h>

using namespace monicdyn;

static void BM_SearchSerial(benchmark::State &state) {
  const SearchConfig cfg{state.range(0)};
  for (auto _ : state)
    benchmark::DoNotOptimize(search_box_serial(cfg).examined);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(box_size(cfg.box)));
}
BENCHMARK(BM_SearchSerial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_SearchParallel(benchmark::State &state) {
  SearchConfig cfg{state.range(0)};
  cfg.threads = static_cast<int>(state.range(1));
  cfg.chunk_size = 256;
  for (auto _ : state)
    benchmark::DoNotOptimize(search_box(cfg).examined);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(box_size(cfg.box)));
}
BENCHMARK(BM_SearchParallel)->Args({2, 1})->Args({2, 4})->Args({4, 1})->Args({4, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_ClassifyTuple(benchmark::State &state) {
  const Quad t{0, 0, 1, 0};
  for (auto _ : state)
    benchmark::DoNotOptimize(classify_tuple(t, Budgets{}).step);
}
BENCHMARK(BM_ClassifyTuple)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
