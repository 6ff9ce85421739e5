#include "bayescal/score_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bayescal/errors.hpp"
#include "bayescal/numerics.hpp"

namespace bayescal {

std::string_view to_string(Hypothesis h) { return h == Hypothesis::H1 ? "H1" : "H2"; }

namespace {

void require_finite(std::span<const double> scores, std::string_view what) {
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) {
      throw ValidationError("non-finite " + std::string(what) + " score at index " + std::to_string(i));
    }
  }
}

}  // namespace

BackgroundData::BackgroundData(std::vector<double> h1_scores, std::vector<double> h2_scores)
    : h1_(std::move(h1_scores)), h2_(std::move(h2_scores)) {
  require_finite(h1_, "H1");
  require_finite(h2_, "H2");
}

BackgroundData BackgroundData::from_labeled(std::span<const LabeledScore> scores) {
  std::vector<double> h1;
  std::vector<double> h2;
  for (const auto& s : scores) {
    (s.label == Hypothesis::H1 ? h1 : h2).push_back(s.value);
  }
  return BackgroundData(std::move(h1), std::move(h2));
}

SufficientStats SufficientStats::merged(const SufficientStats& other) const {
  if (n == 0) return other;
  if (other.n == 0) return *this;
  const double na = static_cast<double>(n);
  const double nb = static_cast<double>(other.n);
  const double total = na + nb;
  const double delta = other.mean - mean;
  SufficientStats out;
  out.n = n + other.n;
  out.mean = mean + delta * (nb / total);
  out.sum_sq_dev = sum_sq_dev + other.sum_sq_dev + delta * delta * (na * nb / total);
  return out;
}

SufficientStats collect_stats(std::span<const double> scores) {
  SufficientStats stats;
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double x = scores[i];
    if (!std::isfinite(x)) {
      throw ValidationError("non-finite score at index " + std::to_string(i));
    }
    const double k = static_cast<double>(i + 1);
    const double delta = x - mean;
    mean += delta / k;
    m2 += delta * (x - mean);
  }
  stats.n = scores.size();
  stats.mean = mean;
  stats.sum_sq_dev = stats.n <= 1 ? 0.0 : std::max(m2, 0.0);
  return stats;
}

void GaussianParams::validate() const {
  if (!std::isfinite(mu1) || !std::isfinite(mu2)) {
    throw ValidationError("Gaussian means must be finite");
  }
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !std::isfinite(lambda1) || !std::isfinite(lambda2)) {
    throw ValidationError("Gaussian precisions must be positive and finite");
  }
}

GaussianParams fit_plugin(const BackgroundData& data, double variance_floor) {
  if (!(variance_floor > 0.0) || !std::isfinite(variance_floor)) {
    throw ValidationError("variance floor must be positive and finite");
  }
  auto fit_class = [&](Hypothesis h, double& mean, double& precision) {
    const auto& scores = data.scores(h);
    if (scores.size() < 2) {
      throw InsufficientDataError("insufficient data for plugin fit: class " + std::string(to_string(h)) +
                                  " has " + std::to_string(scores.size()) + " score(s), need at least 2");
    }
    const SufficientStats s = collect_stats(scores);
    mean = s.mean;
    precision = 1.0 / std::max(s.sum_sq_dev / static_cast<double>(s.n), variance_floor);
  };
  GaussianParams theta;
  fit_class(Hypothesis::H1, theta.mu1, theta.lambda1);
  fit_class(Hypothesis::H2, theta.mu2, theta.lambda2);
  return theta;
}

double gaussian_log_density(double e, double mean, double precision) {
  if (!(precision > 0.0)) {
    throw ValidationError("Gaussian precision must be positive");
  }
  const double d = e - mean;
  return 0.5 * std::log(precision) - 0.5 * kLogTwoPi - 0.5 * precision * d * d;
}

}  // namespace bayescal
