// OpenMP kernels against their serial paths.  Arg 1 = parallel, 0 = serial.

#include <benchmark/benchmark.h>

#include "leg/betti/roots.hpp"
#include "leg/roth/qi.hpp"

using namespace leg;

static void BM_abscissa_fractions(benchmark::State& st) {
  for (auto _ : st) {
    auto fr = st.range(0) ? abscissa_fractions(20) : abscissa_fractions_serial(20);
    benchmark::DoNotOptimize(fr);
  }
}
BENCHMARK(BM_abscissa_fractions)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_height_integral(benchmark::State& st) {
  HeightIntegralOptions o;
  o.tol = 1e-4;
  o.parallel = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(height_integral(QPoly(Q(2)), o).value);
}
BENCHMARK(BM_height_integral)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_isolate_roots(benchmark::State& st) {
  const ZPoly b = abscissa_fraction(12).B;
  for (auto _ : st) benchmark::DoNotOptimize(isolate_roots(b, st.range(0)));
}
BENCHMARK(BM_isolate_roots)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_qi_report(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(quasi_integrality_report(20, Q(1, 16), st.range(0)).max_M);
}
BENCHMARK(BM_qi_report)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
