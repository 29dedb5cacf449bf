// Serial reference vs OpenMP variant of each hot kernel. Run with
// OMP_NUM_THREADS set to the core count; the Exec argument is 0 for serial
// and 1 for OpenMP.

#include <benchmark/benchmark.h>

#include "losdof/channel.hpp"
#include "losdof/fredholm.hpp"
#include "losdof/kernels.hpp"
#include "losdof/montecarlo.hpp"
#include "losdof/quadrature.hpp"

using namespace losdof;
using kernels::Exec;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_LosFill(benchmark::State& state)
{
  const ClusterParams params{static_cast<std::size_t>(state.range(0)), 10000.0, 300.0, 0.1};
  const auto pos = sample_network(params, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_los_matrix(pos, params, exec_of(state)));
}

void BM_Gram(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = build_g_matrix(sample_network(n, 1), 50.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::gram(g, exec_of(state)));
}

void BM_Nystrom(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discretize(SincKernel{20.0}, n, exec_of(state)));
}

void BM_SubdeterminantTrials(benchmark::State& state)
{
  const auto trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expected_subdeterminant_mc(3, 5.0, trials, 1, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_LosFill)->ArgsProduct({{200, 500}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gram)->ArgsProduct({{200, 500}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Nystrom)->ArgsProduct({{600, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubdeterminantTrials)->ArgsProduct({{10000}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
