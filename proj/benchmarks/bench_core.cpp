#include <benchmark/benchmark.h>
#include "forge/cyclotomic.hpp"

static void BM_CycMul(benchmark::State& state) {
  auto a = forge::Cyc::root_of_unity(16, 3) + forge::Cyc::from_int(2, 16);
  auto b = forge::Cyc::root_of_unity(16, 5) + forge::Cyc::from_int(1, 16);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycMul);

BENCHMARK_MAIN();
