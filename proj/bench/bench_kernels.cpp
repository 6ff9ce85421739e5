#include <benchmark/benchmark.h>

#include "bayescal/experiment.hpp"
#include "bayescal/verification.hpp"

using namespace bayescal;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void BM_RunExperiment(benchmark::State& state) {
  ExperimentConfig exp;
  exp.trials = 50;
  exp.n_test_per_class = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(GeneratorConfig{}, exp, mode(state)));
  state.SetItemsProcessed(state.iterations() * exp.trials);
}
BENCHMARK(BM_RunExperiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_QuadraturePredictive(benchmark::State& state) {
  const NormalGammaParams posterior{1.0, 10.0, 5.0, 4.0};
  QuadratureSpec spec;
  spec.grid_mu = spec.grid_lambda = 1001;
  for (auto _ : state) benchmark::DoNotOptimize(quadrature_predictive(posterior, 2.5, spec, mode(state)));
}
BENCHMARK(BM_QuadraturePredictive)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ConfidenceCurve(benchmark::State& state) {
  ConfidenceConfig conf;
  conf.trials = 20;
  conf.n_test_per_class = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(confidence_curve(GeneratorConfig{}, conf, mode(state)));
}
BENCHMARK(BM_ConfidenceCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
