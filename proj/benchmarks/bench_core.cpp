#include <benchmark/benchmark.h>

#include "musb/functional.hpp"
#include "musb/special.hpp"
#include "musb/transform.hpp"

using namespace musb;

static void BM_EMuParts(benchmark::State& state) {
  const DeformParams p(0.7);
  const cplx w = std::polar(static_cast<double>(state.range(0)), 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(e_mu_parts(p, w));
}
BENCHMARK(BM_EMuParts)->Arg(1)->Arg(10)->Arg(40);

static void BM_MacdonaldK(benchmark::State& state) {
  const double x = state.range(0) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(macdonald_k(1.3, x));
}
BENCHMARK(BM_MacdonaldK)->Arg(1)->Arg(15)->Arg(300);

static void BM_ApplyBPoly(benchmark::State& state) {
  const DeformParams p(0.5);
  const ComplexPoly f = ComplexPoly::monomial(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_B_poly(p, f));
}
BENCHMARK(BM_ApplyBPoly)->Arg(4)->Arg(16);

static void BM_EntropyPlane(benchmark::State& state) {
  const DeformParams p(0.5);
  const ParityPair f = parity_split(apply_B_poly(p, ComplexPoly{1.0, 1.0, 0.5}));
  const QuadratureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(entropy_plane(p, f, spec));
}
BENCHMARK(BM_EntropyPlane)->Unit(benchmark::kMillisecond);

static void BM_HilleTamarkin(benchmark::State& state) {
  const QuadratureSpec spec;
  HTOptions opt;
  opt.refine = false;
  for (auto _ : state) benchmark::DoNotOptimize(hille_tamarkin_norm({0.0, 1.0}, 4.0, 1.0, spec, opt));
}
BENCHMARK(BM_HilleTamarkin)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
