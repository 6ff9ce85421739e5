#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace bayescal {

/// H1: same speaker (prosecution). H2: different speakers (defence).
enum class Hypothesis { H1, H2 };

std::string_view to_string(Hypothesis h);

struct LabeledScore {
  Hypothesis label;
  double value;
};

/// Supervised background scores, one list per hypothesis. Either list may be
/// empty; every stored score is finite.
class BackgroundData {
 public:
  BackgroundData() = default;
  BackgroundData(std::vector<double> h1_scores, std::vector<double> h2_scores);

  static BackgroundData from_labeled(std::span<const LabeledScore> scores);

  const std::vector<double>& h1() const { return h1_; }
  const std::vector<double>& h2() const { return h2_; }
  const std::vector<double>& scores(Hypothesis h) const { return h == Hypothesis::H1 ? h1_ : h2_; }
  std::size_t n1() const { return h1_.size(); }
  std::size_t n2() const { return h2_.size(); }

  /// Same data with the class labels exchanged.
  BackgroundData swapped() const { return BackgroundData(h2_, h1_); }

 private:
  std::vector<double> h1_;
  std::vector<double> h2_;
};

struct SufficientStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sum_sq_dev = 0.0;  // sum of squared deviations from the mean

  /// Pooled statistics of the union of two samples.
  SufficientStats merged(const SufficientStats& other) const;
};

/// One-pass (Welford) statistics. Throws ValidationError naming the index of
/// the first non-finite score.
SufficientStats collect_stats(std::span<const double> scores);

/// Plugin model: one Gaussian per hypothesis, parametrized by precision.
struct GaussianParams {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;

  double mean(Hypothesis h) const { return h == Hypothesis::H1 ? mu1 : mu2; }
  double precision(Hypothesis h) const { return h == Hypothesis::H1 ? lambda1 : lambda2; }

  void validate() const;
};

inline constexpr double kDefaultVarianceFloor = 1e-12;

/// Maximum-likelihood fit (1/n variance convention), variance floored at
/// `variance_floor`. Requires at least two scores per class.
GaussianParams fit_plugin(const BackgroundData& data, double variance_floor = kDefaultVarianceFloor);

/// log N(e | mean, 1/precision). Throws ValidationError unless precision > 0.
double gaussian_log_density(double e, double mean, double precision);

}  // namespace bayescal
