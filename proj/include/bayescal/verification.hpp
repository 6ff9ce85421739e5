#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bayescal/conjugate_bayes.hpp"
#include "bayescal/execution.hpp"
#include "bayescal/score_model.hpp"

namespace bayescal {

/// Tensor-product trapezoid grid over (mean, log precision).
///
/// For each precision node the mean is integrated over
/// centre +/- mu_halfwidth_sds conditional standard deviations, where the
/// centre and standard deviation are those of the integrand's Gaussian factor
/// in the mean. Precision runs between the eps and 1-eps quantiles of the
/// integrand's marginal gamma envelope, on a uniform grid in log-precision.
struct QuadratureSpec {
  double mu_halfwidth_sds = 12.0;
  double lambda_quantile_eps = 1e-8;
  std::size_t grid_mu = 2001;
  std::size_t grid_lambda = 2001;

  void validate() const;
};

/// log of the integral of N(e | mu, 1/lambda) NormalGamma(mu, lambda | posterior).
double quadrature_predictive(const NormalGammaParams& posterior, double e,
                             const QuadratureSpec& spec = {},
                             Execution execution = Execution::Parallel);

/// log of the integral of prod_t N(s_t | mu, 1/lambda) [N(e | mu, 1/lambda)]
/// NormalGamma(mu, lambda | prior), i.e. the log evidence of the class scores
/// (and e, when present).
double quadrature_joint_evidence(const NormalGammaParams& prior, std::span<const double> class_scores,
                                 std::optional<double> e, const QuadratureSpec& spec = {},
                                 Execution execution = Execution::Parallel);

/// Bayesian log-LR through ratios of joint evidences:
/// [Z(H1 data + e) - Z(H1 data)] - [Z(H2 data + e) - Z(H2 data)].
double quadrature_joint_log_lr(double e, const BackgroundData& data, const ClassPriors& priors,
                               const QuadratureSpec& spec = {},
                               Execution execution = Execution::Parallel);

struct PitfallPoint {
  double e;
  double exact_log_lr;
  double approx_log_lr;
  double divergence;  // |approx - exact|
};

struct PitfallReport {
  std::vector<PitfallPoint> points;
  double max_divergence = 0.0;
};

/// Log-LR computed from a peak-only approximate parameter posterior (a point
/// mass at each class posterior's joint mode), compared against the exact
/// Bayesian log-LR over `e_grid`. Requires two or more scores per class.
PitfallReport pitfall_point_mass(const BackgroundData& data, const ClassPriors& priors,
                                 std::span<const double> e_grid);

}  // namespace bayescal
