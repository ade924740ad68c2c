#include <benchmark/benchmark.h>

#include "rejopt/evaluation.hpp"
#include "rejopt/reject_predictors.hpp"

using namespace rejopt;

static void BM_FitPosterior(benchmark::State& state) {
  const ExperimentConfig config;
  RngStream rng(1, 0);
  const TrueProcess p = sample_true_process(config.prior(), config.degree, config.noise, rng);
  const Dataset d = sample_dataset(p, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(fit_posterior(d, config.prior(), config.degree, config.noise));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitPosterior)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

static void BM_BuildCurve(benchmark::State& state) {
  RngStream rng(2, 0);
  std::vector<ScoredPoint> scores(static_cast<std::size_t>(state.range(0)));
  for (auto& s : scores) s = {rng.uniform(), rng.uniform()};
  for (auto _ : state) benchmark::DoNotOptimize(build_curve(scores));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildCurve)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

static void BM_RunTrial(benchmark::State& state) {
  const ExperimentConfig config;
  std::size_t trial = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(config, static_cast<std::size_t>(state.range(0)), 3, trial++));
}
BENCHMARK(BM_RunTrial)->Arg(5)->Arg(200);

static void BM_VerifyTheorem1(benchmark::State& state) {
  RngStream rng(4, 0);
  const DiscreteModel model = random_discrete_model(rng, 2, 2, 3);
  const std::vector<double> grid = uniform_grid(1.0, 20);
  const auto kind = state.range(0) == 0 ? LossKind::zero_one : LossKind::cross_entropy;
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem1(model, 1, grid, kind));
}
BENCHMARK(BM_VerifyTheorem1)->Arg(0)->Arg(1);
BENCHMARK_MAIN();
