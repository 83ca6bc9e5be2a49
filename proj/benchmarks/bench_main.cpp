// Microbenchmarks for the hot paths of one time step.

#include <benchmark/benchmark.h>

#include <cmath>

#include "dlimit/em_system.hpp"
#include "dlimit/initial_data.hpp"
#include "dlimit/mhd_system.hpp"
#include "dlimit/spectral.hpp"

using namespace dlimit;

namespace {

MhdState background(int n) {
  return default_background_ic(TorusGrid(n, 2), EosClosure{}, 0.1);
}

void BM_FftRoundTrip(benchmark::State& st) {
  const TorusGrid g(static_cast<int>(st.range(0)), 2);
  ScalarField f = ScalarField::from_function(g, [](double x, double y, double) {
    return std::sin(x) * std::cos(2 * y);
  });
  for (auto _ : st) {
    f.mutable_spec();
    benchmark::DoNotOptimize(f.phys().data());
  }
}
BENCHMARK(BM_FftRoundTrip)->Arg(32)->Arg(64)->Arg(128);

void BM_Curl(benchmark::State& st) {
  const MhdState s = background(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(curl(s.H).max_abs());
}
BENCHMARK(BM_Curl)->Arg(64)->Arg(128);

void BM_EmRhs(benchmark::State& st) {
  const MhdState b = background(static_cast<int>(st.range(0)));
  const EmState s = well_prepared_init(b, 1e-2, 1.0, 1);
  for (auto _ : st) benchmark::DoNotOptimize(em_full_rhs(s, EosClosure{}, 1e-2).dE.c[0].max_abs());
}
BENCHMARK(BM_EmRhs)->Arg(64);

void BM_MhdRhs(benchmark::State& st) {
  const MhdState s = background(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mhd_full_rhs(s, EosClosure{}).dH.c[0].max_abs());
}
BENCHMARK(BM_MhdRhs)->Arg(64);

void BM_EmStep(benchmark::State& st) {
  const MhdState b = background(64);
  EmRunConfig rc;
  rc.epsilon = 1e-2;
  rc.dt = 1.25e-2;
  rc.scheme = static_cast<EmScheme>(st.range(0));
  if (rc.scheme == EmScheme::explicit_rk3) rc.dt = 1e-3;
  EmSolver solver(rc);
  const EmState s0 = well_prepared_init(b, rc.epsilon, 1.0, 1);
  for (auto _ : st) benchmark::DoNotOptimize(solver.step(s0).t);
}
BENCHMARK(BM_EmStep)
    ->Arg(static_cast<int>(EmScheme::exponential))
    ->Arg(static_cast<int>(EmScheme::strang))
    ->Arg(static_cast<int>(EmScheme::explicit_rk3));

void BM_MhdStep(benchmark::State& st) {
  MhdRunConfig rc;
  rc.dt = 6.25e-3;
  MhdSolver solver(rc);
  const MhdState s0 = background(64);
  for (auto _ : st) benchmark::DoNotOptimize(solver.step(s0).t);
}
BENCHMARK(BM_MhdStep);

}  // namespace

BENCHMARK_MAIN();
