#include <benchmark/benchmark.h>

#include "lindblad/basis.hpp"
#include "lindblad/boundary.hpp"
#include "lindblad/ensembles.hpp"
#include "lindblad/generator.hpp"
#include "lindblad/kossakowski.hpp"
#include "lindblad/spectra.hpp"

using namespace lindblad;

static void BM_SampleKossakowski(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    RngStream stream(99, rep++);
    benchmark::DoNotOptimize(
        sample_kossakowski(n, SamplerSpec::wishart(), stream));
  }
}
BENCHMARK(BM_SampleKossakowski)->Arg(8)->Arg(16)->Arg(24);

static void BM_BuildSuperopKron(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto basis = sun_basis(n);
  RngStream stream(7, 0);
  const auto k = sample_kossakowski(n, SamplerSpec::wishart(), stream);
  const auto jumps = jump_decomposition(k, basis);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_superop_kron(jumps, 0.0, nullptr, n));
}
BENCHMARK(BM_BuildSuperopKron)->Arg(8)->Arg(16)->Arg(24);

static void BM_BuildSuperopDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto basis = sun_basis(n);
  RngStream stream(7, 0);
  const auto k = sample_kossakowski(n, SamplerSpec::wishart(), stream);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_superop_direct(k.entries, basis, 0.0, nullptr));
}
BENCHMARK(BM_BuildSuperopDirect)->Arg(4)->Arg(6)->Arg(8);

static void BM_Eig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream stream(3, 0);
  const Matrix g = ginibre_complex(n, stream);
  for (auto _ : state) benchmark::DoNotOptimize(eig(g));
}
BENCHMARK(BM_Eig)->Arg(100)->Arg(400)->Arg(900)->Unit(benchmark::kMillisecond);

static void BM_StieltjesTwoSemicircles(benchmark::State& state) {
  Complex z(1.3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(stieltjes_two_semicircles(z));
}
BENCHMARK(BM_StieltjesTwoSemicircles);

static void BM_LemonCurve(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(lemon_curve(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_LemonCurve)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
