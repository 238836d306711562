#include <benchmark/benchmark.h>

#include "corrlab/classical.h"
#include "corrlab/histories.h"
#include "corrlab/qmat.h"
#include "corrlab/sampling.h"
#include "corrlab/scenario.h"
#include "corrlab/search.h"

namespace {

using namespace corrlab;

void BM_ClassicalBound(benchmark::State& state) {
  const CycleScenario s = CycleScenario::canonical(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classical_bound(s));
}
BENCHMARK(BM_ClassicalBound)->DenseRange(8, 20, 4);

void BM_JpdFeasibleUniform(benchmark::State& state) {
  const MarginalSet m = MarginalSet::uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jpd_feasible(m).feasible);
}
BENCHMARK(BM_JpdFeasibleUniform)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

void BM_JpdFeasibleRandom(benchmark::State& state) {
  Rng rng(42);
  const MarginalSet m = random_marginal_set(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(jpd_feasible(m).feasible);
}
BENCHMARK(BM_JpdFeasibleRandom)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_HermEigen(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  Rng rng(7);
  std::normal_distribution<double> g;
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < dim; ++j) {
      m(i, j) = {g(rng), g(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(herm_eigen(m).values.data());
}
BENCHMARK(BM_HermEigen)->RangeMultiplier(2)->Range(2, 32);

void BM_LgDecomposition(benchmark::State& state) {
  Rng rng(3);
  const HistoryFamily f = random_history_family(rng);
  for (auto _ : state) benchmark::DoNotOptimize(lg_decomposition(f).lhs);
}
BENCHMARK(BM_LgDecomposition);

void BM_MinimizeLhs(benchmark::State& state) {
  const SearchProblem p = kcbs_search_problem(static_cast<SearchKind>(state.range(0)));
  SearchOptions o;
  o.starts = 8;
  for (auto _ : state) benchmark::DoNotOptimize(minimize_lhs(p.space, p.scenario, p.evaluator, o).value);
  state.SetLabel(to_string(p.space.kind));
}
BENCHMARK(BM_MinimizeLhs)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
