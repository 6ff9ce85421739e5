#include "bayescal/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "bayescal/errors.hpp"
#include "bayescal/numerics.hpp"

namespace bayescal {

std::vector<double> default_prior_grid() {
  std::vector<double> grid(41);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -10.0 + 0.5 * static_cast<double>(i);
  return grid;
}

namespace {

void validate_calibration(const CalibrationSettings& c) {
  c.priors.h1.validate();
  c.priors.h2.validate();
  if (!(c.variance_floor > 0.0) || !std::isfinite(c.variance_floor)) {
    throw ValidationError("variance floor must be positive and finite");
  }
}

struct MeanAndStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

// Trial-ordered reduction over the usable slots; independent of how the slots were filled.
MeanAndStderr reduce(std::span<const double> values, std::span<const std::uint8_t> usable, std::size_t stride,
                     std::size_t offset) {
  CompensatedSum sum;
  std::size_t k = 0;
  for (std::size_t t = 0; t < usable.size(); ++t) {
    if (usable[t]) {
      sum.add(values[t * stride + offset]);
      ++k;
    }
  }
  MeanAndStderr out;
  if (k == 0) return out;
  out.mean = sum.value() / static_cast<double>(k);
  if (k > 1) {
    CompensatedSum ss;
    for (std::size_t t = 0; t < usable.size(); ++t) {
      if (usable[t]) {
        const double d = values[t * stride + offset] - out.mean;
        ss.add(d * d);
      }
    }
    out.std_error = std::sqrt(ss.value() / static_cast<double>(k - 1) / static_cast<double>(k));
  }
  return out;
}

template <typename Kernel>
void for_each_trial(std::size_t trials, Execution execution, Kernel&& kernel) {
  if (execution == Execution::Parallel) {
    const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t t = 0; t < count; ++t) kernel(static_cast<std::size_t>(t));
  } else {
    for (std::size_t t = 0; t < trials; ++t) kernel(t);
  }
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Fills one trial's slots of the error arrays. Returns false for a degenerate trial.
bool error_trial(const GeneratorConfig& gen, const ExperimentConfig& exp, std::uint64_t seed, double* plugin_out,
                 double* bayes_out) {
  std::mt19937_64 rng(seed);
  const BackgroundData data = generate_background(gen, exp.n1, exp.n2, rng);
  const auto test1 = generate_scores(gen, Hypothesis::H1, exp.n_test_per_class, rng, ScoreRole::Test);
  const auto test2 = generate_scores(gen, Hypothesis::H2, exp.n_test_per_class, rng, ScoreRole::Test);
  if (data.n1() < 2 || data.n2() < 2) return false;

  const GaussianParams theta = fit_plugin(data, exp.calibration.variance_floor);
  const BayesianCalibration bayes = BayesianCalibration::fit(data, exp.calibration.priors);

  std::vector<double> p1(test1.size()), p2(test2.size()), b1(test1.size()), b2(test2.size());
  for (std::size_t i = 0; i < test1.size(); ++i) {
    p1[i] = plugin_log_lr(test1[i], theta).value;
    b1[i] = bayes.log_lr(test1[i]).value;
  }
  for (std::size_t i = 0; i < test2.size(); ++i) {
    p2[i] = plugin_log_lr(test2[i], theta).value;
    b2[i] = bayes.log_lr(test2[i]).value;
  }
  if (!all_finite(p1) || !all_finite(p2) || !all_finite(b1) || !all_finite(b2)) return false;
  std::sort(p1.begin(), p1.end());
  std::sort(p2.begin(), p2.end());
  std::sort(b1.begin(), b1.end());
  std::sort(b2.begin(), b2.end());
  for (std::size_t j = 0; j < exp.prior_grid.size(); ++j) {
    plugin_out[j] = weighted_error_rate_sorted(p1, p2, exp.prior_grid[j]);
    bayes_out[j] = weighted_error_rate_sorted(b1, b2, exp.prior_grid[j]);
  }
  return true;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw ValidationError("experiment trials must be at least 1");
  if (n_test_per_class < 1) throw ValidationError("experiment n_test_per_class must be at least 1");
  if (prior_grid.empty()) throw ValidationError("experiment prior_grid must not be empty");
  for (double x : prior_grid) {
    if (!std::isfinite(x) || std::abs(x) > 700.0) throw ValidationError("prior_grid values must be finite");
  }
  validate_calibration(calibration);
}

void ConfidenceConfig::validate() const {
  if (sizes.empty()) throw ValidationError("confidence sizes must not be empty");
  if (trials < 1) throw ValidationError("confidence trials must be at least 1");
  if (n_test_per_class < 1) throw ValidationError("confidence n_test_per_class must be at least 1");
  validate_calibration(calibration);
}

double weighted_error_rate(std::span<const double> llrs_h1, std::span<const double> llrs_h2,
                           double prior_log_odds) {
  if (llrs_h1.empty() || llrs_h2.empty()) throw ValidationError("error rate needs scores of both classes");
  const double t = -prior_log_odds;
  std::size_t misses = 0;
  std::size_t false_alarms = 0;
  for (double x : llrs_h1) misses += x <= t ? 1 : 0;
  for (double x : llrs_h2) false_alarms += x > t ? 1 : 0;
  const double pi1 = logistic(prior_log_odds);
  return pi1 * (static_cast<double>(misses) / static_cast<double>(llrs_h1.size())) +
         (1.0 - pi1) * (static_cast<double>(false_alarms) / static_cast<double>(llrs_h2.size()));
}

double weighted_error_rate_sorted(std::span<const double> sorted_h1, std::span<const double> sorted_h2,
                                  double prior_log_odds) {
  if (sorted_h1.empty() || sorted_h2.empty()) throw ValidationError("error rate needs scores of both classes");
  const double t = -prior_log_odds;
  const auto misses = static_cast<std::size_t>(std::upper_bound(sorted_h1.begin(), sorted_h1.end(), t) - sorted_h1.begin());
  const auto false_alarms =
      static_cast<std::size_t>(sorted_h2.end() - std::upper_bound(sorted_h2.begin(), sorted_h2.end(), t));
  const double pi1 = logistic(prior_log_odds);
  return pi1 * (static_cast<double>(misses) / static_cast<double>(sorted_h1.size())) +
         (1.0 - pi1) * (static_cast<double>(false_alarms) / static_cast<double>(sorted_h2.size()));
}

ErrorCurve run_experiment(const GeneratorConfig& gen, const ExperimentConfig& exp, Execution execution) {
  gen.validate();
  exp.validate();
  const std::size_t grid = exp.prior_grid.size();
  std::vector<double> plugin_err(exp.trials * grid, 0.0);
  std::vector<double> bayes_err(exp.trials * grid, 0.0);
  std::vector<std::uint8_t> usable(exp.trials, 0);

  for_each_trial(exp.trials, execution, [&](std::size_t t) {
    usable[t] = error_trial(gen, exp, trial_seed(exp.seed, t), &plugin_err[t * grid], &bayes_err[t * grid]) ? 1 : 0;
  });

  ErrorCurve curve;
  curve.trials_used = static_cast<std::size_t>(std::count(usable.begin(), usable.end(), std::uint8_t{1}));
  curve.degenerate_trials = exp.trials - curve.trials_used;
  if (curve.trials_used == 0) {
    throw InsufficientDataError("every trial was degenerate; the plugin fit needs n1, n2 >= 2");
  }
  curve.points.reserve(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double lo = exp.prior_grid[j];
    const double pi1 = logistic(lo);
    const auto plugin = reduce(plugin_err, usable, grid, j);
    const auto bayes = reduce(bayes_err, usable, grid, j);
    curve.points.push_back({lo, plugin.mean, bayes.mean, std::min(pi1, 1.0 - pi1), plugin.std_error, bayes.std_error});
  }
  return curve;
}

std::vector<ConfidenceRow> confidence_curve(const GeneratorConfig& gen, const ConfidenceConfig& config,
                                            Execution execution) {
  gen.validate();
  config.validate();
  // Per trial: plugin|H1, plugin|H2, bayes|H1, bayes|H2.
  constexpr std::size_t kSlots = 4;
  std::vector<ConfidenceRow> rows;
  for (std::size_t s = 0; s < config.sizes.size(); ++s) {
    const auto [n1, n2] = config.sizes[s];
    std::vector<double> values(config.trials * kSlots, 0.0);
    std::vector<std::uint8_t> usable(config.trials, 0);
    for_each_trial(config.trials, execution, [&](std::size_t t) {
      std::mt19937_64 rng(trial_seed(config.seed, s * config.trials + t));
      const BackgroundData data = generate_background(gen, n1, n2, rng);
      const auto test1 = generate_scores(gen, Hypothesis::H1, config.n_test_per_class, rng, ScoreRole::Test);
      const auto test2 = generate_scores(gen, Hypothesis::H2, config.n_test_per_class, rng, ScoreRole::Test);
      if (n1 < 2 || n2 < 2) return;
      const GaussianParams theta = fit_plugin(data, config.calibration.variance_floor);
      const BayesianCalibration bayes = BayesianCalibration::fit(data, config.calibration.priors);
      CompensatedSum plug1, plug2, bay1, bay2;
      for (double e : test1) {
        plug1.add(plugin_log_lr(e, theta).value);
        bay1.add(bayes.log_lr(e).value);
      }
      for (double e : test2) {
        plug2.add(plugin_log_lr(e, theta).value);
        bay2.add(bayes.log_lr(e).value);
      }
      const double nt = static_cast<double>(config.n_test_per_class);
      double* slot = &values[t * kSlots];
      slot[0] = plug1.value() / nt;
      slot[1] = plug2.value() / nt;
      slot[2] = bay1.value() / nt;
      slot[3] = bay2.value() / nt;
      usable[t] = std::all_of(slot, slot + kSlots, [](double x) { return std::isfinite(x); }) ? 1 : 0;
    });
    const std::size_t used = static_cast<std::size_t>(std::count(usable.begin(), usable.end(), std::uint8_t{1}));
    const std::size_t degenerate = config.trials - used;
    if (used == 0) {
      throw InsufficientDataError("every confidence trial was degenerate at size (" + std::to_string(n1) + ", " +
                                  std::to_string(n2) + ")");
    }
    const Method methods[] = {Method::Plugin, Method::Plugin, Method::Bayesian, Method::Bayesian};
    const Hypothesis hyps[] = {Hypothesis::H1, Hypothesis::H2, Hypothesis::H1, Hypothesis::H2};
    for (std::size_t k = 0; k < kSlots; ++k) {
      const auto r = reduce(values, usable, kSlots, k);
      rows.push_back({n1, n2, methods[k], hyps[k], r.mean, r.std_error, degenerate});
    }
  }
  return rows;
}

}  // namespace bayescal
