#include "bayescal/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "bayescal/errors.hpp"
#include "bayescal/likelihood_ratio.hpp"
#include "bayescal/numerics.hpp"

namespace bayescal {

void QuadratureSpec::validate() const {
  if (!(mu_halfwidth_sds > 0.0) || !std::isfinite(mu_halfwidth_sds)) {
    throw ValidationError("quadrature mu_halfwidth_sds must be positive");
  }
  if (!(lambda_quantile_eps > 0.0 && lambda_quantile_eps < 0.5)) {
    throw ValidationError("quadrature lambda_quantile_eps must lie in (0, 0.5)");
  }
  if (grid_mu < 101 || grid_mu % 2 == 0 || grid_lambda < 101 || grid_lambda % 2 == 0) {
    throw ValidationError("quadrature grid sizes must be odd and at least 101");
  }
}

namespace {

// Integrand: NormalGamma(mu, lambda | base) * prod_t N(x_t | mu, 1/lambda).
// Expanded around the centre c of its Gaussian factor in mu, with
// mu = c + z * sd(lambda), sd(lambda) = 1/sqrt(lambda (beta + m)), lambda = exp(u).
struct Integrand {
  NormalGammaParams base;
  double m = 0.0;            // number of Gaussian factors
  double centre = 0.0;       // (beta mu0 + sum x) / (beta + m)
  double r0 = 0.0;           // sum (x - c)^2
  double r1 = 0.0;           // sum (x - c)
  double min_quadratic = 0;  // beta (c - mu0)^2 + sum (x - c)^2
  double log_norm_const = 0; // a ln b - lgamma(a) + 0.5 ln beta - (m + 1)/2 ln 2pi

  Integrand(const NormalGammaParams& params, std::span<const double> scores, std::optional<double> e)
      : base(params) {
    std::vector<double> x(scores.begin(), scores.end());
    if (e) x.push_back(*e);
    m = static_cast<double>(x.size());
    centre = (base.beta * base.mu0 + compensated_sum(x)) / (base.beta + m);
    CompensatedSum s0;
    CompensatedSum s1;
    for (double xi : x) {
      const double d = xi - centre;
      s0.add(d * d);
      s1.add(d);
    }
    r0 = s0.value();
    r1 = s1.value();
    const double dc = centre - base.mu0;
    min_quadratic = base.beta * dc * dc + r0;
    log_norm_const = base.a * std::log(base.b) - log_gamma(base.a) + 0.5 * std::log(base.beta) -
                     0.5 * (m + 1.0) * kLogTwoPi;
  }

  // Marginal of the integrand in lambda is Gamma(shape, rate) up to a constant.
  double envelope_shape() const { return base.a + 0.5 * m; }
  double envelope_rate() const { return base.b + 0.5 * min_quadratic; }
};

double log_gamma_quantile_lower(double shape, double p) {
  const double q = boost::math::gamma_p_inv(shape, p);
  if (q > 1e-280) return std::log(q);
  // Small-argument form of the regularized lower incomplete gamma: P(a, x) ~ x^a / Gamma(a + 1).
  return (std::log(p) + log_gamma(shape + 1.0)) / shape;
}

struct Grid {
  double u_lo;
  double u_step;
  double z_lo;
  double z_step;
  std::size_t nz;
  std::size_t nu;
};

Grid make_grid(const Integrand& f, const QuadratureSpec& spec) {
  const double shape = f.envelope_shape();
  const double log_rate = std::log(f.envelope_rate());
  const double u_lo = log_gamma_quantile_lower(shape, spec.lambda_quantile_eps) - log_rate;
  const double u_hi = std::log(boost::math::gamma_q_inv(shape, spec.lambda_quantile_eps)) - log_rate;
  // Below this the precision grid underflows; it happens only for near-improper
  // lambda marginals (shape well below 1), e.g. a vague prior with no data.
  if (!(u_lo > -600.0) || !std::isfinite(u_hi)) {
    throw ValidationError("quadrature precision range underflows: lambda marginal shape " + std::to_string(shape) +
                          " is too small for a finite grid");
  }
  Grid g;
  g.nu = spec.grid_lambda;
  g.nz = spec.grid_mu;
  g.u_lo = u_lo;
  g.u_step = (u_hi - u_lo) / static_cast<double>(g.nu - 1);
  g.z_lo = -spec.mu_halfwidth_sds;
  g.z_step = 2.0 * spec.mu_halfwidth_sds / static_cast<double>(g.nz - 1);
  return g;
}

double trapezoid_weight(std::size_t i, std::size_t n, double step) {
  return (i == 0 || i + 1 == n) ? 0.5 * step : step;
}

// log of the trapezoid integral over mu at lambda = exp(u), times the
// Jacobian lambda of the log-precision substitution.
double row_log_integral(const Integrand& f, const Grid& g, std::size_t row, std::vector<double>& log_values,
                        std::vector<double>& weights) {
  const double u = g.u_lo + static_cast<double>(row) * g.u_step;
  const double lambda = std::exp(u);
  const double beta_m = f.base.beta + f.m;
  const double log_sd = -0.5 * (u + std::log(beta_m));
  const double sd = std::exp(log_sd);
  const double row_const = f.log_norm_const + (f.base.a - 0.5 + 0.5 * f.m) * u - f.base.b * lambda + log_sd + u;
  const double dc = f.centre - f.base.mu0;
  for (std::size_t k = 0; k < g.nz; ++k) {
    const double z = g.z_lo + static_cast<double>(k) * g.z_step;
    const double offset = z * sd;
    const double dmu0 = dc + offset;
    const double data_quadratic = f.r0 - 2.0 * offset * f.r1 + f.m * offset * offset;
    log_values[k] = row_const - 0.5 * lambda * (f.base.beta * dmu0 * dmu0 + data_quadratic);
    weights[k] = trapezoid_weight(k, g.nz, g.z_step);
  }
  return log_sum_exp_weighted(log_values, weights);
}

double integrate_serial(const Integrand& f, const Grid& g) {
  std::vector<double> row_logs(g.nu);
  std::vector<double> log_values(g.nz);
  std::vector<double> weights(g.nz);
  for (std::size_t r = 0; r < g.nu; ++r) {
    row_logs[r] = row_log_integral(f, g, r, log_values, weights);
  }
  std::vector<double> row_weights(g.nu);
  for (std::size_t r = 0; r < g.nu; ++r) row_weights[r] = trapezoid_weight(r, g.nu, g.u_step);
  return log_sum_exp_weighted(row_logs, row_weights);
}

double integrate_parallel(const Integrand& f, const Grid& g) {
  std::vector<double> row_logs(g.nu);
  const auto rows = static_cast<std::int64_t>(g.nu);
#pragma omp parallel
  {
    std::vector<double> log_values(g.nz);
    std::vector<double> weights(g.nz);
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r) {
      row_logs[static_cast<std::size_t>(r)] =
          row_log_integral(f, g, static_cast<std::size_t>(r), log_values, weights);
    }
  }
  std::vector<double> row_weights(g.nu);
  for (std::size_t r = 0; r < g.nu; ++r) row_weights[r] = trapezoid_weight(r, g.nu, g.u_step);
  return log_sum_exp_weighted(row_logs, row_weights);
}

double integrate(const Integrand& f, const QuadratureSpec& spec, Execution execution) {
  const Grid g = make_grid(f, spec);
  return execution == Execution::Parallel ? integrate_parallel(f, g) : integrate_serial(f, g);
}

void require_finite_scores(std::span<const double> scores, std::optional<double> e) {
  for (double s : scores) {
    if (!std::isfinite(s)) throw ValidationError("quadrature scores must be finite");
  }
  if (e && !std::isfinite(*e)) throw ValidationError("quadrature score must be finite");
}

}  // namespace

double quadrature_predictive(const NormalGammaParams& posterior, double e, const QuadratureSpec& spec,
                             Execution execution) {
  spec.validate();
  posterior.validate();
  require_finite_scores({}, e);
  return integrate(Integrand(posterior, {}, e), spec, execution);
}

double quadrature_joint_evidence(const NormalGammaParams& prior, std::span<const double> class_scores,
                                 std::optional<double> e, const QuadratureSpec& spec, Execution execution) {
  spec.validate();
  prior.validate();
  require_finite_scores(class_scores, e);
  return integrate(Integrand(prior, class_scores, e), spec, execution);
}

double quadrature_joint_log_lr(double e, const BackgroundData& data, const ClassPriors& priors,
                               const QuadratureSpec& spec, Execution execution) {
  const double h1_with_e = quadrature_joint_evidence(priors.h1, data.h1(), e, spec, execution);
  const double h1_alone = quadrature_joint_evidence(priors.h1, data.h1(), std::nullopt, spec, execution);
  const double h2_with_e = quadrature_joint_evidence(priors.h2, data.h2(), e, spec, execution);
  const double h2_alone = quadrature_joint_evidence(priors.h2, data.h2(), std::nullopt, spec, execution);
  return (h1_with_e - h1_alone) - (h2_with_e - h2_alone);
}

PitfallReport pitfall_point_mass(const BackgroundData& data, const ClassPriors& priors,
                                 std::span<const double> e_grid) {
  if (data.n1() < 2 || data.n2() < 2) {
    throw InsufficientDataError("pitfall demonstration needs at least 2 scores per class");
  }
  const NormalGammaParams post1 = posterior_update(priors.h1, collect_stats(data.h1()));
  const NormalGammaParams post2 = posterior_update(priors.h2, collect_stats(data.h2()));
  // Joint mode of a Normal-Gamma: mean = mu0, precision = (a - 1/2) / b.
  const GaussianParams peak{post1.mu0, post2.mu0, (post1.a - 0.5) / post1.b, (post2.a - 0.5) / post2.b};
  const BayesianCalibration exact{predictive(post1), predictive(post2)};

  PitfallReport report;
  report.points.reserve(e_grid.size());
  for (double e : e_grid) {
    PitfallPoint p;
    p.e = e;
    p.exact_log_lr = exact.log_lr(e).value;
    p.approx_log_lr = plugin_log_lr(e, peak).value;
    p.divergence = std::abs(p.approx_log_lr - p.exact_log_lr);
    report.max_divergence = std::max(report.max_divergence, p.divergence);
    report.points.push_back(p);
  }
  return report;
}

}  // namespace bayescal
