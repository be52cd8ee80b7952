#include <benchmark/benchmark.h>

#include "bpdg/limiter.hpp"
#include "bpdg/presets.hpp"
#include "bpdg/stepper.hpp"

using namespace bpdg;

static void BM_Evaluate1D(benchmark::State& state) {
  const Scheme1D scheme(build_mesh_1d(static_cast<int>(state.range(0))), make_problem(1, {}));
  const State1D s = scheme.initial_state();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(scheme, s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Evaluate1D)->Arg(80)->Arg(640);

static void BM_Evaluate2D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Scheme2D scheme(build_mesh_2d(n, n), make_problem(4, {}));
  const State2D s = scheme.initial_state();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(scheme, s));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Evaluate2D)->Arg(20)->Arg(80);

static void BM_Limit1D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Scheme1D scheme(build_mesh_1d(n), make_problem(3, {}));
  Field1D r = scheme.initial_state().r;
  for (int j = 0; j < n; j += 2) r[j] = {-0.01, r[j][1] + 0.01};
  for (auto _ : state) benchmark::DoNotOptimize(limit_field(r, scheme.porosity(), {}));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Limit1D)->Arg(640);

static void BM_Limit2D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Scheme2D scheme(build_mesh_2d(n, n), make_problem(5, {}));
  Field2D r = scheme.initial_state().r;
  for (int cell = 0; cell < n * n; cell += 3) {
    r[cell][0] -= 0.01;
    r[cell][3] += 0.01;
  }
  for (auto _ : state) benchmark::DoNotOptimize(limit_field(r, scheme.porosity(), {}));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Limit2D)->Arg(80);

static void BM_Rk3Step1D(benchmark::State& state) {
  const Scheme1D scheme(build_mesh_1d(160), make_problem(1, {}));
  const TimeIntegrator<Scheme1D> integ(scheme, Integrator::SspRk3, {});
  const State1D s = scheme.initial_state();
  const double dt = 0.01 * scheme.mesh().dx() * scheme.mesh().dx();
  for (auto _ : state) benchmark::DoNotOptimize(integ.ssp_rk3_step(s, dt));
}
BENCHMARK(BM_Rk3Step1D);
BENCHMARK_MAIN();
