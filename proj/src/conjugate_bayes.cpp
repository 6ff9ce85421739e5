#include "bayescal/conjugate_bayes.hpp"

#include <cmath>

#include "bayescal/errors.hpp"
#include "bayescal/numerics.hpp"

namespace bayescal {

namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

void NormalGammaParams::validate() const {
  if (!std::isfinite(mu0)) throw ValidationError("Normal-Gamma mu0 must be finite");
  if (!positive_finite(beta)) throw ValidationError("Normal-Gamma beta must be positive and finite");
  if (!positive_finite(a)) throw ValidationError("Normal-Gamma a must be positive and finite");
  if (!positive_finite(b)) throw ValidationError("Normal-Gamma b must be positive and finite");
}

void StudentT::validate() const {
  if (!std::isfinite(location)) throw ValidationError("Student-t location must be finite");
  if (!positive_finite(scale)) throw ValidationError("Student-t scale must be positive and finite");
  if (!positive_finite(dof)) throw ValidationError("Student-t dof must be positive and finite");
}

NormalGammaParams default_noninformative_prior() { return {0.0, 0.01, 0.01, 0.01}; }

NormalGammaParams posterior_update(const NormalGammaParams& prior, const SufficientStats& stats) {
  prior.validate();
  if (stats.n == 0) return prior;
  const double n = static_cast<double>(stats.n);
  const double beta_n = prior.beta + n;
  const double d = stats.mean - prior.mu0;
  NormalGammaParams post;
  post.mu0 = (prior.beta * prior.mu0 + n * stats.mean) / beta_n;
  post.beta = beta_n;
  post.a = prior.a + 0.5 * n;
  post.b = prior.b + 0.5 * stats.sum_sq_dev + prior.beta * n * d * d / (2.0 * beta_n);
  return post;
}

StudentT predictive(const NormalGammaParams& posterior) {
  posterior.validate();
  StudentT t;
  t.location = posterior.mu0;
  t.scale = std::sqrt(posterior.b * (posterior.beta + 1.0) / (posterior.a * posterior.beta));
  t.dof = 2.0 * posterior.a;
  return t;
}

double student_t_log_density(const StudentT& t, double e) {
  const double nu = t.dof;
  const double z = (e - t.location) / t.scale;
  return log_gamma(0.5 * (nu + 1.0)) - log_gamma(0.5 * nu) - 0.5 * (std::log(nu) + kLogPi) -
         std::log(t.scale) - 0.5 * (nu + 1.0) * std::log1p(z * z / nu);
}

double normal_gamma_log_density(const NormalGammaParams& p, double mean, double precision) {
  if (!(precision > 0.0)) {
    throw ValidationError("Normal-Gamma density needs a positive precision");
  }
  const double log_lambda = std::log(precision);
  const double d = mean - p.mu0;
  const double log_normal = 0.5 * (std::log(p.beta) + log_lambda - kLogTwoPi) - 0.5 * p.beta * precision * d * d;
  const double log_gamma_pdf = p.a * std::log(p.b) - log_gamma(p.a) + (p.a - 1.0) * log_lambda - p.b * precision;
  return log_normal + log_gamma_pdf;
}

std::vector<ParamSample> sample_params(const NormalGammaParams& posterior, std::mt19937_64& rng,
                                       std::size_t count) {
  posterior.validate();
  // std::gamma_distribution takes (shape, scale); the Normal-Gamma uses a rate.
  std::gamma_distribution<double> precision_dist(posterior.a, 1.0 / posterior.b);
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  std::vector<ParamSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double lambda = precision_dist(rng);
    const double mean = posterior.mu0 + unit_normal(rng) / std::sqrt(posterior.beta * lambda);
    out.push_back({mean, lambda});
  }
  return out;
}

std::vector<ParamSample> sample_params(const NormalGammaParams& posterior, std::uint64_t rng_seed,
                                       std::size_t count) {
  std::mt19937_64 rng(rng_seed);
  return sample_params(posterior, rng, count);
}

}  // namespace bayescal
