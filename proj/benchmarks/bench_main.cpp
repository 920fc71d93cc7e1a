#include <benchmark/benchmark.h>

#include <random>

#include "latcone/families.hpp"
#include "latcone/pipeline.hpp"
#include "latcone/simplex_eval.hpp"

using namespace latcone;

namespace {

Mat<mpz_class> random_square(std::mt19937& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> e(lo, hi);
  Mat<mpz_class> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = e(rng);
  return m;
}

// entry ranges keep the Hadamard bound inside 64 bits
int det_entry_bound(int n) { return n <= 8 ? 9 : n <= 15 ? 4 : 1; }

void BM_det_int64(benchmark::State& state) {
  std::mt19937 rng(5);
  const int n = (int)state.range(0);
  const int b = det_entry_bound(n);
  Mat<CheckedInt> m(n, n);
  std::uniform_int_distribution<int> e(-b, b);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = CheckedInt(e(rng));
  for (auto _ : state) benchmark::DoNotOptimize(det(m));
}
BENCHMARK(BM_det_int64)->Arg(8)->Arg(15)->Arg(24);

void BM_det_gmp(benchmark::State& state) {
  std::mt19937 rng(5);
  const int n = (int)state.range(0);
  const int b = det_entry_bound(n);
  Mat<mpz_class> m = random_square(rng, n, -b, b);
  for (auto _ : state) benchmark::DoNotOptimize(det(m));
}
BENCHMARK(BM_det_gmp)->Arg(8)->Arg(15)->Arg(24);

void BM_parallelotope(benchmark::State& state) {
  std::mt19937 rng(9);
  Mat<mpz_class> m;
  do {
    m = random_square(rng, 6, 0, 3);
  } while (det(m) == 0 || abs(det(m)) > 200);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_mod_parallelotope(m));
}
BENCHMARK(BM_parallelotope);

void BM_support_hyperplanes_cross(benchmark::State& state) {
  ParsedInput in = make_family("cross" + std::to_string(state.range(0)));
  RunConfig cfg;
  cfg.tasks = TASK_SUPP;
  for (auto _ : state) benchmark::DoNotOptimize(run(in, cfg));
}
BENCHMARK(BM_support_hyperplanes_cross)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_pipeline_4x4_basis(benchmark::State& state) {
  ParsedInput in = make_family("4x4");
  RunConfig cfg;
  cfg.tasks = TASK_SUPP | TASK_BASIS;
  cfg.partial = true;
  for (auto _ : state) benchmark::DoNotOptimize(run(in, cfg));
}
BENCHMARK(BM_pipeline_4x4_basis)->Unit(benchmark::kMillisecond);

void BM_pipeline_cyclo_series(benchmark::State& state) {
  ParsedInput in = make_family("cyclo" + std::to_string(state.range(0)));
  RunConfig cfg;
  cfg.tasks = TASK_VOLUME | TASK_SERIES;
  for (auto _ : state) benchmark::DoNotOptimize(run(in, cfg));
}
BENCHMARK(BM_pipeline_cyclo_series)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
