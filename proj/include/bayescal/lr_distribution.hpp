#pragma once

#include <cstdint>
#include <vector>

#include "bayescal/conjugate_bayes.hpp"
#include "bayescal/execution.hpp"
#include "bayescal/generator.hpp"

namespace bayescal {

/// Summary a practitioner would report after recomputing the plugin log-LR of
/// a fixed score over many resampled background databases, alongside the
/// Bayesian log-LR of each database.
struct LrDistributionReport {
  double score = 0.0;
  double mu = 0.0;     // mean of the plugin log-LRs
  double sigma = 0.0;  // sample standard deviation of the plugin log-LRs
  double mu_stderr = 0.0;
  double mean_bayes_log_lr = 0.0;
  std::vector<double> plugin_log_lr_per_trial;
  std::vector<double> bayes_log_lr_per_trial;
};

LrDistributionReport lr_distribution_demo(double e, const GeneratorConfig& world, std::size_t n1,
                                          std::size_t n2, std::size_t trials, std::uint64_t seed,
                                          const ClassPriors& priors = ClassPriors::shared(default_noninformative_prior()),
                                          double variance_floor = kDefaultVarianceFloor,
                                          Execution execution = Execution::Parallel);

}  // namespace bayescal
