#pragma once

#include <string_view>

#include "bayescal/conjugate_bayes.hpp"
#include "bayescal/score_model.hpp"

namespace bayescal {

/// Hypothesis prior pi1 = P(H1 | other evidence); pi2 = 1 - pi1.
class TrialPrior {
 public:
  explicit TrialPrior(double pi1);
  static TrialPrior from_log_odds(double log_odds);

  double pi1() const { return pi1_; }
  double pi2() const { return 1.0 - pi1_; }
  double log_odds() const { return log_odds_; }

 private:
  TrialPrior(double pi1, double log_odds) : pi1_(pi1), log_odds_(log_odds) {}
  double pi1_;
  double log_odds_;
};

class DecisionPolicy {
 public:
  DecisionPolicy() = default;
  DecisionPolicy(double cost_false_convict, double cost_false_acquit);

  double cost_false_convict() const { return cost_false_convict_; }
  double cost_false_acquit() const { return cost_false_acquit_; }
  /// ln(C_false_convict / C_false_acquit).
  double log_threshold() const;

 private:
  double cost_false_convict_ = 1.0;
  double cost_false_acquit_ = 1.0;
};

enum class Method { Plugin, Bayesian };
std::string_view to_string(Method m);

/// Natural-log likelihood ratio tagged with the method that produced it.
struct LogLR {
  double value;
  Method method;

  double log10() const;
};

enum class Decision { Convict, Acquit };
std::string_view to_string(Decision d);

LogLR plugin_log_lr(double e, const GaussianParams& theta);

/// Per-class posterior predictives; evaluating many scores against the same
/// background data only needs one of these.
struct BayesianCalibration {
  StudentT h1;
  StudentT h2;

  static BayesianCalibration fit(const BackgroundData& data, const ClassPriors& priors);
  LogLR log_lr(double e) const;
};

LogLR bayes_log_lr(double e, const BackgroundData& data, const NormalGammaParams& prior);
LogLR bayes_log_lr(double e, const BackgroundData& data, const ClassPriors& priors);

double posterior_log_odds(const LogLR& llr, const TrialPrior& prior);

/// Convict iff post_log_odds > log threshold. Exact ties acquit.
Decision decide(double post_log_odds, const DecisionPolicy& policy);

/// Plugin parameters for both classes sampled jointly.
struct ThetaSample {
  ParamSample h1;
  ParamSample h2;
};

/// log R_B - [log R_plug(e|theta) + log P(theta|D,e,H2) - log P(theta|D,e,H1)],
/// with the augmented posteriors obtained by conjugate updates that include e
/// under each label. Zero up to rounding for every theta.
double decomposition_residual(double e, const BackgroundData& data, const ClassPriors& priors,
                              const ThetaSample& theta);

}  // namespace bayescal
