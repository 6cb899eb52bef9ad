#include <benchmark/benchmark.h>

#include <randsor/generators.hpp>
#include <randsor/solver.hpp>

using namespace randsor;

namespace {

void BM_RandomizedKaczmarzSteps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinearSystem sys = make_random(n, n, 20.0, 3);
  const ProjectorEnsemble ens = ensemble_from_system(normalize(sys));
  SolveConfig cfg;
  cfg.omega = 1.4;
  cfg.max_iters = 1000;
  cfg.record_every = 1000;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(run_randomized(sys, ens, cfg).sq_errors.back());
  }
  state.SetItemsProcessed(state.iterations() * cfg.max_iters);
}
BENCHMARK(BM_RandomizedKaczmarzSteps)->Arg(16)->Arg(64)->Arg(256);

void BM_CyclicGaussSeidelSweeps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinearSystem sys = make_random_spd(n, 20.0, 3);
  const ProjectorEnsemble ens = ensemble_from_system(normalize(sys));
  SolveConfig cfg;
  cfg.omega = 1.2;
  cfg.max_iters = 50 * n;
  cfg.record_every = 50 * n;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_cyclic(sys, ens, cfg).sq_errors.back());
  state.SetItemsProcessed(state.iterations() * cfg.max_iters);
}
BENCHMARK(BM_CyclicGaussSeidelSweeps)->Arg(16)->Arg(64);

void BM_IterationMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinearSystem sys = make_random_spd(n, 20.0, 5);
  const NormalizedSystem ns = normalize(sys);
  const ProjectorEnsemble ens = ensemble_from_system(ns);
  for (auto _ : state)
    benchmark::DoNotOptimize(iteration_matrix_g(ns, ens, 1.2).spectral_radius);
}
BENCHMARK(BM_IterationMatrix)->Arg(8)->Arg(32);

void BM_BlockStep(benchmark::State& state) {
  const LinearSystem sys = make_random(64, 48, 30.0, 9);
  const NormalizedSystem ns = normalize(sys);
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < state.range(0); ++i) rows.push_back(i);
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(48);
  for (auto _ : state) benchmark::DoNotOptimize(block_step(ns, x, rows, 1.3).sum());
}
BENCHMARK(BM_BlockStep)->Arg(2)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
