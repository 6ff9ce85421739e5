#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bayescal/score_model.hpp"

namespace bayescal {

/// Normal-Gamma over (mean, precision):
///   precision ~ Gamma(shape a, rate b),  mean | precision ~ N(mu0, 1 / (beta * precision)).
/// Used both for the prior and for per-class posteriors.
struct NormalGammaParams {
  double mu0 = 0.0;
  double beta = 0.01;
  double a = 0.01;
  double b = 0.01;

  void validate() const;
  bool operator==(const NormalGammaParams&) const = default;
};

/// Location/scale/dof Student's t. `scale` is a scale, not a variance.
struct StudentT {
  double location = 0.0;
  double scale = 1.0;
  double dof = 1.0;

  void validate() const;
};

/// Priors for the two hypothesis classes; both default to the same
/// non-informative prior.
struct ClassPriors {
  NormalGammaParams h1;
  NormalGammaParams h2;

  static ClassPriors shared(const NormalGammaParams& prior) { return {prior, prior}; }
  const NormalGammaParams& of(Hypothesis h) const { return h == Hypothesis::H1 ? h1 : h2; }
};

/// mu0 = 0, beta = a = b = 0.01.
NormalGammaParams default_noninformative_prior();

NormalGammaParams posterior_update(const NormalGammaParams& prior, const SufficientStats& stats);

/// Closed-form posterior predictive of a single new score.
StudentT predictive(const NormalGammaParams& posterior);

double student_t_log_density(const StudentT& t, double e);

/// Joint log-density of (mean, precision) under a Normal-Gamma.
double normal_gamma_log_density(const NormalGammaParams& params, double mean, double precision);

struct ParamSample {
  double mean;
  double precision;
};

/// Draws (mean, precision) pairs from the Normal-Gamma using `rng`.
std::vector<ParamSample> sample_params(const NormalGammaParams& posterior, std::mt19937_64& rng,
                                       std::size_t count);

/// Deterministic given `rng_seed`.
std::vector<ParamSample> sample_params(const NormalGammaParams& posterior, std::uint64_t rng_seed,
                                       std::size_t count);

}  // namespace bayescal
