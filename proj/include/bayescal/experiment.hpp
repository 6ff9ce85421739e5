#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bayescal/conjugate_bayes.hpp"
#include "bayescal/execution.hpp"
#include "bayescal/generator.hpp"
#include "bayescal/likelihood_ratio.hpp"

namespace bayescal {

/// 41 points from -10 to +10 natural-log prior odds.
std::vector<double> default_prior_grid();

struct CalibrationSettings {
  ClassPriors priors = ClassPriors::shared(default_noninformative_prior());
  double variance_floor = kDefaultVarianceFloor;
};

struct ExperimentConfig {
  std::size_t n1 = 9;
  std::size_t n2 = 27;
  std::size_t trials = 1000;
  std::vector<double> prior_grid = default_prior_grid();
  std::size_t n_test_per_class = 10000;
  std::uint64_t seed = 1;
  CalibrationSettings calibration{};

  void validate() const;
};

struct ErrorCurvePoint {
  double prior_log_odds;
  double error_plugin;
  double error_bayes;
  double error_prior_only;  // min(pi1, pi2)
  double stderr_plugin;
  double stderr_bayes;
};

struct ErrorCurve {
  std::vector<ErrorCurvePoint> points;
  std::size_t trials_used = 0;
  std::size_t degenerate_trials = 0;
};

/// Expected cost with unit costs when deciding H1 iff llr > -prior_log_odds:
/// pi1 * P(llr_h1 <= t) + pi2 * P(llr_h2 > t).
double weighted_error_rate(std::span<const double> llrs_h1, std::span<const double> llrs_h2,
                           double prior_log_odds);

/// Same quantity for pre-sorted inputs, O(log n) per prior point.
double weighted_error_rate_sorted(std::span<const double> sorted_h1,
                                  std::span<const double> sorted_h2, double prior_log_odds);

ErrorCurve run_experiment(const GeneratorConfig& gen, const ExperimentConfig& exp,
                          Execution execution = Execution::Parallel);

struct ConfidenceRow {
  std::size_t n1;
  std::size_t n2;
  Method method;
  Hypothesis hypothesis;
  double mean_log_lr;
  double std_error;
  std::size_t degenerate_trials;
};

struct ConfidenceConfig {
  std::vector<std::pair<std::size_t, std::size_t>> sizes{{9, 27}, {30, 405}, {300, 4050}};
  std::size_t trials = 1000;
  std::size_t n_test_per_class = 2000;
  std::uint64_t seed = 1;
  CalibrationSettings calibration{};

  void validate() const;
};

/// Per background size: mean over trials of the per-trial average test log-LR,
/// for each method and true hypothesis (rows ordered size, method, hypothesis).
std::vector<ConfidenceRow> confidence_curve(const GeneratorConfig& gen, const ConfidenceConfig& config,
                                            Execution execution = Execution::Parallel);

}  // namespace bayescal
