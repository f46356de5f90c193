#include <benchmark/benchmark.h>

#include "nullstate/heat_kernel.hpp"
#include "nullstate/jacobi.hpp"
#include "nullstate/pde.hpp"

using namespace nullstate;

static void BM_JacobiRecurrence(benchmark::State& state) {
  const JacobiBasis b(1.0 / 3.0, 1.0 / 3.0);
  const int n = static_cast<int>(state.range(0));
  double y = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(b.value(n, y));
    y = y > 0.9 ? -0.9 : y + 1e-3;
  }
}
BENCHMARK(BM_JacobiRecurrence)->Arg(8)->Arg(64)->Arg(512);

static void BM_KernelSmallTime(benchmark::State& state) {
  const HeatKernel k({1.0 / 3.0, 1.0 / 3.0});
  for (auto _ : state) benchmark::DoNotOptimize(k.evaluate(0.4, 0.45, 1e-3).value);
}
BENCHMARK(BM_KernelSmallTime);

static void BM_GaussJacobiRule(benchmark::State& state) {
  const JacobiBasis b(0.75, 1.0 / 3.0);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_jacobi_rule(m, b).nodes.data());
}
BENCHMARK(BM_GaussJacobiRule)->Arg(40)->Arg(400);

static void BM_NullStateResidual(benchmark::State& state) {
  const Kappa kappa(6.0);
  const CandidateFunction f = builtin_n1(kappa);
  const PointConfig c({0.0, 1.3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(null_state_residual(f, c, WeightAssignment::uniform(), kappa, 0).relative);
  }
}
BENCHMARK(BM_NullStateResidual);
BENCHMARK_MAIN();
