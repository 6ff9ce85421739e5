#pragma once

#include <cmath>
#include <numbers>
#include <span>

namespace bayescal {

inline constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
inline constexpr double kLogPi = 1.1447298858494001741434273513531;

/// Thread-safe log-gamma for positive arguments (std::lgamma may write signgam).
double log_gamma(double x);

double logistic(double x);

/// Neumaier-compensated accumulator. Result depends only on the order of add() calls.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> values);

/// log(sum_i w_i * exp(x_i)) with strictly positive weights; -inf for empty input.
double log_sum_exp_weighted(std::span<const double> log_values, std::span<const double> weights);

double log_sum_exp(std::span<const double> log_values);

}  // namespace bayescal
