#include "bayescal/lr_distribution.hpp"

#include <cmath>

#include "bayescal/errors.hpp"
#include "bayescal/likelihood_ratio.hpp"
#include "bayescal/numerics.hpp"

namespace bayescal {

namespace {

struct TrialValues {
  double plugin;
  double bayes;
};

TrialValues run_trial(double e, const GeneratorConfig& world, std::size_t n1, std::size_t n2, std::uint64_t seed,
                      const ClassPriors& priors, double variance_floor) {
  std::mt19937_64 rng(seed);
  const BackgroundData data = generate_background(world, n1, n2, rng);
  const GaussianParams theta = fit_plugin(data, variance_floor);
  return {plugin_log_lr(e, theta).value, BayesianCalibration::fit(data, priors).log_lr(e).value};
}

}  // namespace

LrDistributionReport lr_distribution_demo(double e, const GeneratorConfig& world, std::size_t n1, std::size_t n2,
                                          std::size_t trials, std::uint64_t seed, const ClassPriors& priors,
                                          double variance_floor, Execution execution) {
  world.validate();
  priors.h1.validate();
  priors.h2.validate();
  if (!std::isfinite(e)) throw ValidationError("score must be finite");
  if (trials < 2) throw ValidationError("lr-distribution needs at least 2 trials");
  if (n1 < 2 || n2 < 2) {
    throw InsufficientDataError("lr-distribution needs at least 2 background scores per class");
  }
  if (!(variance_floor > 0.0)) throw ValidationError("variance floor must be positive");

  LrDistributionReport report;
  report.score = e;
  report.plugin_log_lr_per_trial.resize(trials);
  report.bayes_log_lr_per_trial.resize(trials);
  auto& plugin = report.plugin_log_lr_per_trial;
  auto& bayes = report.bayes_log_lr_per_trial;

  if (execution == Execution::Parallel) {
    const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < count; ++t) {
      const auto v = run_trial(e, world, n1, n2, trial_seed(seed, static_cast<std::uint64_t>(t)), priors, variance_floor);
      plugin[static_cast<std::size_t>(t)] = v.plugin;
      bayes[static_cast<std::size_t>(t)] = v.bayes;
    }
  } else {
    for (std::size_t t = 0; t < trials; ++t) {
      const auto v = run_trial(e, world, n1, n2, trial_seed(seed, t), priors, variance_floor);
      plugin[t] = v.plugin;
      bayes[t] = v.bayes;
    }
  }

  const double n = static_cast<double>(trials);
  report.mu = compensated_sum(plugin) / n;
  report.mean_bayes_log_lr = compensated_sum(bayes) / n;
  CompensatedSum ss;
  for (double v : plugin) ss.add((v - report.mu) * (v - report.mu));
  report.sigma = std::sqrt(ss.value() / (n - 1.0));
  report.mu_stderr = report.sigma / std::sqrt(n);
  return report;
}

}  // namespace bayescal
