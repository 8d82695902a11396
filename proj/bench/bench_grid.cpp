#include <benchmark/benchmark.h>

#include "sdea/grid.hpp"
#include "sdea/passivity.hpp"

using namespace sdea;

namespace {

const HybridMatrix& nominal() {
  static const HybridMatrix h = hybrid_matrix(SystemParams::table1(), {408.0, 0.17});
  return h;
}

template <Exec E>
void BM_Determinant(benchmark::State& state) {
  const auto grid = log_grid(1e-3, 1e6, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(determinant_margin(nominal(), grid, E).min_relative);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_Llewellyn(benchmark::State& state) {
  const auto grid = log_grid(1e-3, 1e6, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(llewellyn_margin(nominal(), grid, E).min_relative);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_Bode(benchmark::State& state) {
  const auto grid = log_grid(1e-3, 1e6, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bode(nominal().h11, grid, E).back().phase_deg);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_AbsoluteStability(benchmark::State& state) {
  CheckOptions opt;
  opt.exec = E;
  opt.points = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(check_absolute_stability(SystemParams::table1(), {430.0, 0.13}, opt).overall);
}

}  // namespace

BENCHMARK(BM_Determinant<Exec::kSerial>)->RangeMultiplier(8)->Range(512, 262144);
BENCHMARK(BM_Determinant<Exec::kParallel>)->RangeMultiplier(8)->Range(512, 262144);
BENCHMARK(BM_Llewellyn<Exec::kSerial>)->RangeMultiplier(8)->Range(512, 262144);
BENCHMARK(BM_Llewellyn<Exec::kParallel>)->RangeMultiplier(8)->Range(512, 262144);
BENCHMARK(BM_Bode<Exec::kSerial>)->RangeMultiplier(8)->Range(512, 262144);
BENCHMARK(BM_Bode<Exec::kParallel>)->RangeMultiplier(8)->Range(512, 262144);
BENCHMARK(BM_AbsoluteStability<Exec::kSerial>)->Arg(4000)->Arg(64000);
BENCHMARK(BM_AbsoluteStability<Exec::kParallel>)->Arg(4000)->Arg(64000);

BENCHMARK_MAIN();
