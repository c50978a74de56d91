// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "kratzer/correction.hpp"
#include "kratzer/kernels.hpp"
#include "kratzer/solver.hpp"

namespace {

kratzer::PotentialSpec sample_potential() { return kratzer::corrected_screened_kratzer(5.0, 1.0, 0.25); }

template <bool Parallel>
void BM_Tabulate(benchmark::State& state) {
  const auto spec = sample_potential();
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = 0.01 + 50.0 * static_cast<double>(i) / static_cast<double>(n);
  std::vector<double> v(n);
  std::vector<double> d1(n);
  std::vector<double> d2(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kratzer::tabulate(spec, r, {v, d1, d2});
    } else {
      kratzer::tabulate_serial(spec, r, {v, d1, d2});
    }
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Solve(benchmark::State& state) {
  const kratzer::RadialProblem problem{sample_potential(), 0, 0.5};
  const auto grid = kratzer::default_grid(1.0);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto spectrum = Parallel ? kratzer::solve_bound_states(problem, grid, n_max)
                             : kratzer::solve_bound_states_serial(problem, grid, n_max);
    benchmark::DoNotOptimize(spectrum.states.data());
  }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_Tabulate, true)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK_TEMPLATE(BM_Tabulate, false)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK_TEMPLATE(BM_Solve, true)->Arg(4);
BENCHMARK_TEMPLATE(BM_Solve, false)->Arg(4);

BENCHMARK_MAIN();
