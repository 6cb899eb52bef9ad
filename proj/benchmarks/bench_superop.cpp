#include <benchmark/benchmark.h>

#include <randsor/bounds.hpp>
#include <randsor/generators.hpp>
#include <randsor/superop.hpp>

using namespace randsor;

namespace {

ProjectorEnsemble ensemble_for(int n) {
  return ensemble_from_system(normalize(make_random_spd(n, 50.0, 7)));
}

void BM_BuildC(benchmark::State& state) {
  const ProjectorEnsemble ens = ensemble_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_c(ens).mat.sum());
}
BENCHMARK(BM_BuildC)->Arg(8)->Arg(16)->Arg(32);

void BM_RhoValue(benchmark::State& state) {
  const ProjectorEnsemble ens = ensemble_for(static_cast<int>(state.range(0)));
  const SuperOp b_op = build_b(ens);
  const SuperOp c_op = build_c(ens);
  for (auto _ : state) benchmark::DoNotOptimize(rho_value(b_op, c_op, 1.3));
}
BENCHMARK(BM_RhoValue)->Arg(8)->Arg(16)->Arg(32);

void BM_RhoFullReport(benchmark::State& state) {
  const ProjectorEnsemble ens = ensemble_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rho(ens, 1.3).lam_max);
}
BENCHMARK(BM_RhoFullReport)->Arg(8)->Arg(16);

void BM_Lambda1Gap(benchmark::State& state) {
  const ProjectorEnsemble ens = ensemble_for(static_cast<int>(state.range(0)));
  const SuperOp b_op = build_b(ens);
  const SuperOp c_op = build_c(ens);
  for (auto _ : state) benchmark::DoNotOptimize(lambda1_gap(b_op, c_op, 1.3));
}
BENCHMARK(BM_Lambda1Gap)->Arg(8)->Arg(16)->Arg(32);

void BM_Ingredients(benchmark::State& state) {
  const ProjectorEnsemble ens = ensemble_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ingredients(ens).xi);
}
BENCHMARK(BM_Ingredients)->Arg(8)->Arg(32);

void BM_OptimalOmega(benchmark::State& state) {
  const Ingredients ing = ingredients(ensemble_for(16));
  for (auto _ : state) benchmark::DoNotOptimize(optimal_omega(ing).omega_star);
}
BENCHMARK(BM_OptimalOmega);

}  // namespace

BENCHMARK_MAIN();
