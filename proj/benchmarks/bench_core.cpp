// Microbenchmarks for the hot paths: closed-form step algebra, frame
// construction, propagation, the streamed long-horizon pipeline, and the
// runtime-bound scan.

#include <benchmark/benchmark.h>

#include <cstddef>

#include "adiabat/algebra.hpp"
#include "adiabat/diagnostics.hpp"
#include "adiabat/evolve.hpp"
#include "adiabat/model.hpp"
#include "adiabat/scaling.hpp"
#include "adiabat/spectral.hpp"

namespace {

using namespace adiabat;

HamiltonianSpec ramp() {
  return HamiltonianSpec::linear_interp(-pauli_z(), pauli_x()).scaled(1.0);
}

Vector2 upper_start(const HamiltonianSpec& spec) {
  return eig2(at_time(spec, 0.0)).vectors[0];
}

void BM_PauliExp(benchmark::State& state) {
  const PauliCoeffs a{0.3, 0.7, -0.2, 1.1};
  double theta = 0.001;
  for (auto _ : state) {
    theta += 1e-6;  // defeat value caching without touching the cost
    benchmark::DoNotOptimize(pauli_exp(a, theta));
  }
}
BENCHMARK(BM_PauliExp);

void BM_Eig2(benchmark::State& state) {
  const Matrix2 h = 0.4 * pauli_x() - 0.3 * pauli_y() + 1.2 * pauli_z();
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig2(h));
  }
}
BENCHMARK(BM_Eig2);

void BM_BuildFrame(benchmark::State& state) {
  const auto spec = HamiltonianSpec::rotating(1.0, 0.1);
  const TimeGrid grid(50.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_frame(spec, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildFrame)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_PropagateDeo(benchmark::State& state) {
  const auto spec = HamiltonianSpec::rotating(1.0, 0.1);
  const TimeGrid grid(50.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_deo(spec, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PropagateDeo)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_RunSummary(benchmark::State& state) {
  const auto spec = ramp();
  const TimeGrid grid(1.0, static_cast<std::size_t>(state.range(0)));
  const Vector2 psi0 = upper_start(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_summary(spec, grid, psi0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunSummary)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_BuildDiagnostics(benchmark::State& state) {
  const auto spec = HamiltonianSpec::rotating(1.0, 0.1);
  const TimeGrid grid(50.0, static_cast<std::size_t>(state.range(0)));
  const auto frame = build_frame(spec, grid);
  const auto ud = propagate_deo(spec, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_diagnostics(ud, frame));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildDiagnostics)->Arg(1000)->Arg(10000);

void BM_MinRuntimeBound(benchmark::State& state) {
  const auto spec = ramp();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        min_runtime_bound(spec, 0.01, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_MinRuntimeBound)->Arg(2001)->Arg(20001);

}  // namespace

BENCHMARK_MAIN();
