#include <benchmark/benchmark.h>

#include <cmath>

#include "hwstaff/erlang.hpp"
#include "hwstaff/halfin_whitt.hpp"
#include "hwstaff/mmn_oracle.hpp"
#include "hwstaff/numerics.hpp"
#include "hwstaff/proof_kit.hpp"

namespace {

// Servers n at load 0.9 n; the recurrence is O(n).
void BM_ErlangRecurrence(benchmark::State& state) {
  const auto n = state.range(0);
  const double a = 0.9 * static_cast<double>(n);
  for (auto _ : state) benchmark::DoNotOptimize(hwstaff::erlang::erlang_c_integer(n, a));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ErlangRecurrence)->RangeMultiplier(10)->Range(10, 100000)->Complexity();

void BM_ErlangQuadrature(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0)) + 0.5;
  const double a = 0.9 * s;
  for (auto _ : state) benchmark::DoNotOptimize(hwstaff::erlang::erlang_c_real(s, a));
}
BENCHMARK(BM_ErlangQuadrature)->RangeMultiplier(10)->Range(10, 100000);

void BM_ErlangGamma(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0)) + 0.5;
  const double a = 0.9 * s;
  for (auto _ : state) benchmark::DoNotOptimize(hwstaff::erlang::erlang_c_gamma(s, a));
}
BENCHMARK(BM_ErlangGamma)->RangeMultiplier(10)->Range(10, 100000);

void BM_UpperGamma(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hwstaff::numerics::upper_gamma_regularized(s, 0.9 * s));
}
BENCHMARK(BM_UpperGamma)->RangeMultiplier(10)->Range(10, 100000);

void BM_MinServers(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hwstaff::erlang::min_servers(a, 0.2));
}
BENCHMARK(BM_MinServers)->RangeMultiplier(10)->Range(10, 10000);

void BM_RealStaffing(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hwstaff::erlang::real_staffing_level(a, 0.2));
}
BENCHMARK(BM_RealStaffing)->RangeMultiplier(10)->Range(10, 10000);

void BM_HwSweep(benchmark::State& state) {
  const auto grid = hwstaff::halfin_whitt::make_grid(0.01, 1e4, 40, true);
  for (auto _ : state) benchmark::DoNotOptimize(hwstaff::halfin_whitt::hw_sweep(1.0, grid));
}
BENCHMARK(BM_HwSweep);

void BM_MomentY(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hwstaff::proof_kit::moment_y(a, 1.0));
}
BENCHMARK(BM_MomentY)->RangeMultiplier(10)->Range(1, 10000);

void BM_Simulation(benchmark::State& state) {
  const auto cfg = hwstaff::mmn::SimConfig::with_default_warmup(5, 4.0, 1.0, state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(hwstaff::mmn::simulate_mmn(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulation)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
