#include "bayescal/numerics.hpp"

#include <algorithm>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

namespace bayescal {

double log_gamma(double x) { return boost::math::lgamma(x); }

double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double z = std::exp(x);
  return z / (1.0 + z);
}

double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

double log_sum_exp_weighted(std::span<const double> log_values, std::span<const double> weights) {
  if (log_values.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(log_values.begin(), log_values.end());
  if (!std::isfinite(peak)) return peak;
  CompensatedSum acc;
  for (std::size_t i = 0; i < log_values.size(); ++i) {
    acc.add(weights[i] * std::exp(log_values[i] - peak));
  }
  return peak + std::log(acc.value());
}

double log_sum_exp(std::span<const double> log_values) {
  if (log_values.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(log_values.begin(), log_values.end());
  if (!std::isfinite(peak)) return peak;
  CompensatedSum acc;
  for (double v : log_values) acc.add(std::exp(v - peak));
  return peak + std::log(acc.value());
}

}  // namespace bayescal
