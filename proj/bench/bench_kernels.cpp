#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "twoctl/kernels.hpp"
#include "twoctl/metrics.hpp"

namespace {

using twoctl::Polynomial;
using twoctl::RationalFunction;
using twoctl::kernels::Exec;

// Sixth-order lightly damped map with three resonances.
RationalFunction resonant() {
  Polynomial den{1.0};
  for (double w : {0.5, 3.0, 20.0}) den = den * Polynomial({w * w, 0.05 * w, 1.0});
  return RationalFunction(Polynomial({1.0, 0.3, 0.02}), den);
}

// Fourth-order plant with a right-half-plane pole, as seen by the gain search.
RationalFunction unstable_plant() { return RationalFunction(Polynomial({2.0, 1.0}), Polynomial({-1.0, 2.0, 3.0, 2.0, 1.0})); }

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::serial : Exec::parallel; }

void BM_MagnitudeGrid(benchmark::State& state) {
  const auto tf = resonant();
  const auto omegas = twoctl::kernels::logspace(-3.0, 4.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(twoctl::kernels::magnitude_on_grid(tf, omegas, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LogMagnitudeGrid(benchmark::State& state) {
  const auto tf = resonant();
  const auto omegas = twoctl::kernels::logspace(-3.0, 4.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(twoctl::kernels::log_magnitude_on_grid(tf, omegas, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_StaticGainAbscissae(benchmark::State& state) {
  const auto plant = unstable_plant();
  const auto gains = twoctl::kernels::logspace(-3.0, 3.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(twoctl::kernels::static_gain_abscissae(plant, gains, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HinfNorm(benchmark::State& state) {
  const auto tf = resonant();
  twoctl::HinfOptions opt;
  opt.grid_points = static_cast<std::size_t>(state.range(0));
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(twoctl::hinf_norm(tf, opt));
}

// range(0): grid size, range(1): 0 serial, 1 parallel
BENCHMARK(BM_MagnitudeGrid)->ArgsProduct({{2000, 200000}, {0, 1}})->UseRealTime();
BENCHMARK(BM_LogMagnitudeGrid)->ArgsProduct({{2000, 200000}, {0, 1}})->UseRealTime();
BENCHMARK(BM_StaticGainAbscissae)->ArgsProduct({{800, 8000}, {0, 1}})->UseRealTime();
BENCHMARK(BM_HinfNorm)->ArgsProduct({{2000, 20000}, {0, 1}})->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
