#include "bayescal/likelihood_ratio.hpp"

#include <cmath>
#include <numbers>

#include "bayescal/errors.hpp"
#include "bayescal/numerics.hpp"

namespace bayescal {

TrialPrior::TrialPrior(double pi1) : pi1_(pi1), log_odds_(0.0) {
  if (!(pi1 > 0.0 && pi1 < 1.0)) {
    throw ValidationError("pi1 must lie strictly between 0 and 1");
  }
  log_odds_ = std::log(pi1) - std::log1p(-pi1);
}

TrialPrior TrialPrior::from_log_odds(double log_odds) {
  if (!std::isfinite(log_odds)) throw ValidationError("prior log-odds must be finite");
  const double pi1 = logistic(log_odds);
  if (!(pi1 > 0.0 && pi1 < 1.0)) throw ValidationError("prior log-odds too extreme");
  return TrialPrior(pi1, log_odds);
}

DecisionPolicy::DecisionPolicy(double cost_false_convict, double cost_false_acquit)
    : cost_false_convict_(cost_false_convict), cost_false_acquit_(cost_false_acquit) {
  if (!(cost_false_convict > 0.0) || !std::isfinite(cost_false_convict) || !(cost_false_acquit > 0.0) ||
      !std::isfinite(cost_false_acquit)) {
    throw ValidationError("decision costs must be positive and finite");
  }
}

double DecisionPolicy::log_threshold() const {
  return std::log(cost_false_convict_) - std::log(cost_false_acquit_);
}

std::string_view to_string(Method m) { return m == Method::Plugin ? "plugin" : "bayes"; }

std::string_view to_string(Decision d) { return d == Decision::Convict ? "convict" : "acquit"; }

double LogLR::log10() const { return value / std::numbers::ln10; }

LogLR plugin_log_lr(double e, const GaussianParams& theta) {
  return {gaussian_log_density(e, theta.mu1, theta.lambda1) - gaussian_log_density(e, theta.mu2, theta.lambda2),
          Method::Plugin};
}

BayesianCalibration BayesianCalibration::fit(const BackgroundData& data, const ClassPriors& priors) {
  return {predictive(posterior_update(priors.h1, collect_stats(data.h1()))),
          predictive(posterior_update(priors.h2, collect_stats(data.h2())))};
}

LogLR BayesianCalibration::log_lr(double e) const {
  return {student_t_log_density(h1, e) - student_t_log_density(h2, e), Method::Bayesian};
}

LogLR bayes_log_lr(double e, const BackgroundData& data, const NormalGammaParams& prior) {
  return bayes_log_lr(e, data, ClassPriors::shared(prior));
}

LogLR bayes_log_lr(double e, const BackgroundData& data, const ClassPriors& priors) {
  return BayesianCalibration::fit(data, priors).log_lr(e);
}

double posterior_log_odds(const LogLR& llr, const TrialPrior& prior) { return llr.value + prior.log_odds(); }

Decision decide(double post_log_odds, const DecisionPolicy& policy) {
  return post_log_odds > policy.log_threshold() ? Decision::Convict : Decision::Acquit;
}

double decomposition_residual(double e, const BackgroundData& data, const ClassPriors& priors,
                              const ThetaSample& theta) {
  if (!(theta.h1.precision > 0.0) || !(theta.h2.precision > 0.0)) {
    throw ValidationError("sampled precisions must be positive");
  }
  const SufficientStats s1 = collect_stats(data.h1());
  const SufficientStats s2 = collect_stats(data.h2());
  const SufficientStats single = collect_stats(std::span<const double>(&e, 1));

  const NormalGammaParams post1 = posterior_update(priors.h1, s1);
  const NormalGammaParams post2 = posterior_update(priors.h2, s2);
  const NormalGammaParams post1_with_e = posterior_update(priors.h1, s1.merged(single));
  const NormalGammaParams post2_with_e = posterior_update(priors.h2, s2.merged(single));

  const double log_rb = student_t_log_density(predictive(post1), e) - student_t_log_density(predictive(post2), e);

  const GaussianParams theta_plugin{theta.h1.mean, theta.h2.mean, theta.h1.precision, theta.h2.precision};
  const double log_rplug = plugin_log_lr(e, theta_plugin).value;

  // Augmented posterior under label Hi: class i absorbs e, the other class is unchanged.
  const double log_aug_h1 = normal_gamma_log_density(post1_with_e, theta.h1.mean, theta.h1.precision) +
                            normal_gamma_log_density(post2, theta.h2.mean, theta.h2.precision);
  const double log_aug_h2 = normal_gamma_log_density(post1, theta.h1.mean, theta.h1.precision) +
                            normal_gamma_log_density(post2_with_e, theta.h2.mean, theta.h2.precision);

  return log_rb - (log_rplug + (log_aug_h2 - log_aug_h1));
}

}  // namespace bayescal
