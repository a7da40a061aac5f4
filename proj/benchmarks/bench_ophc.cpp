#include <benchmark/benchmark.h>

#include "ophc/hc_test.hpp"
#include "ophc/periodogram.hpp"
#include "ophc/signal_model.hpp"

namespace {

ophc::ComplexSeries noise(std::size_t n) { return ophc::sample_complex_normal(n, 1.0, ophc::RngHandle{1, 0}); }

void BM_TransformDirect(benchmark::State& state) {
  const auto y = noise(static_cast<std::size_t>(state.range(0)));
  const auto q = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ophc::transform_direct(y, q));
}
BENCHMARK(BM_TransformDirect)->Args({256, 1024})->Args({1000, 7000});

void BM_TransformFft(benchmark::State& state) {
  const auto y = noise(static_cast<std::size_t>(state.range(0)));
  const auto q = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ophc::transform_fft(y, q));
}
BENCHMARK(BM_TransformFft)->Args({256, 1024})->Args({1000, 7000})->Args({1000, 14000})->Args({1000, 1000000});

void BM_HcStarPvalues(benchmark::State& state) {
  const auto pg = ophc::transform_fft(noise(1000), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ophc::hc_star_pvalues(pg));
}
BENCHMARK(BM_HcStarPvalues)->Arg(1000)->Arg(14000)->Arg(1000000);

void BM_HcStarInterval(benchmark::State& state) {
  const auto pg = ophc::transform_fft(noise(1000), static_cast<std::size_t>(state.range(0)));
  const auto ab = ophc::IntervalBounds::theory(1000);
  for (auto _ : state) benchmark::DoNotOptimize(ophc::hc_star_interval(pg, ab.a, ab.b));
}
BENCHMARK(BM_HcStarInterval)->Arg(14000)->Arg(1000000);

void BM_SynthesizeAlternative(benchmark::State& state) {
  const ophc::AlternativeParams params;
  std::uint64_t k = 0;
  for (auto _ : state) {
    const auto spec = ophc::make_alternative(params, ophc::RngHandle{2, k});
    benchmark::DoNotOptimize(ophc::synthesize(spec, params.n, 1.0, ophc::RngHandle{3, k++}));
  }
}
BENCHMARK(BM_SynthesizeAlternative);

}  // namespace

BENCHMARK_MAIN();
