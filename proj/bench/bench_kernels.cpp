#include <benchmark/benchmark.h>

#include <random>

#include "drinfeld/cinf.hpp"
#include "drinfeld/kernels.hpp"

namespace {

using namespace drinfeld;

FieldPtr bench_field() {
  static FieldPtr f = [] {
    FieldConfig c;
    c.p = 5;
    c.m = 4;
    c.e = 100;
    return Field::make(c);
  }();
  return f;
}

std::vector<Fe> random_vector(const Field& f, size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int32_t> d(-1, static_cast<int32_t>(f.order()) - 2);
  std::vector<Fe> v(n);
  for (Fe& x : v) x = Fe{d(rng)};
  return v;
}

void BM_ConvolveSerial(benchmark::State& st) {
  const auto f = bench_field();
  const size_t n = static_cast<size_t>(st.range(0));
  const auto a = random_vector(*f, n, 1), b = random_vector(*f, n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::convolve_serial(*f, a, b, n));
  st.SetComplexityN(st.range(0));
}

void BM_ConvolveParallel(benchmark::State& st) {
  const auto f = bench_field();
  const size_t n = static_cast<size_t>(st.range(0));
  const auto a = random_vector(*f, n, 1), b = random_vector(*f, n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::convolve_parallel(*f, a, b, n));
  st.SetComplexityN(st.range(0));
}

void BM_SeriesInverse(benchmark::State& st) {
  const auto f = bench_field();
  const CInf x = (CInf::one(f) - CInf::theta_pow(f, -1) + CInf::theta_pow(f, -3)).truncated(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(x.inverse());
}

}  // namespace

BENCHMARK(BM_ConvolveSerial)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(BM_ConvolveParallel)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(BM_SeriesInverse)->Arg(1000)->Arg(6400);

BENCHMARK_MAIN();
