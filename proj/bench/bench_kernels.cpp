// Serial reference against OpenMP kernels for the cluster tables.
#include <benchmark/benchmark.h>

#include "henderson/cluster.hpp"
#include "henderson/potentials.hpp"

using namespace henderson;

namespace {

void run(benchmark::State& state, KernelMode mode, bool with_K4) {
  const int M = static_cast<int>(state.range(0));
  const int n_max = static_cast<int>(state.range(1));
  GridSpec g(0.05 * (M - 1) / 2, M);
  auto p = lj_type(g, 1.0, 0.3, 1.0, 6.0);
  for (auto _ : state) {
    auto t = build_tables(p, ClusterTruncation{n_max}, with_K4, mode);
    benchmark::DoNotOptimize(t);
  }
  state.counters["M"] = M;
  state.counters["n_max"] = n_max;
}

void BM_tables_serial(benchmark::State& s) { run(s, KernelMode::serial_reference, false); }
void BM_tables_parallel(benchmark::State& s) { run(s, KernelMode::parallel, false); }
void BM_tables_K4_serial(benchmark::State& s) { run(s, KernelMode::serial_reference, true); }
void BM_tables_K4_parallel(benchmark::State& s) { run(s, KernelMode::parallel, true); }

}  // namespace

BENCHMARK(BM_tables_serial)->Args({129, 3})->Args({129, 4})->Args({257, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tables_parallel)->Args({129, 3})->Args({129, 4})->Args({257, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tables_K4_serial)->Args({129, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tables_K4_parallel)->Args({129, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
