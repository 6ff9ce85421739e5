#include "bayescal/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bayescal/generator.hpp"
#include "bayescal/likelihood_ratio.hpp"

namespace bayescal {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

NormalGammaParams random_prior(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> loc(-3.0, 3.0);
  NormalGammaParams p;
  p.mu0 = loc(rng);
  p.beta = log_uniform(rng, 0.01, 2.0);
  p.a = log_uniform(rng, 0.01, 2.0);
  p.b = log_uniform(rng, 0.01, 2.0);
  return p;
}

std::vector<double> random_class_scores(std::mt19937_64& rng, std::size_t min_n, std::size_t max_n) {
  std::uniform_int_distribution<std::size_t> size(min_n, max_n);
  std::uniform_real_distribution<double> loc(-4.0, 4.0);
  const std::size_t n = size(rng);
  std::normal_distribution<double> dist(loc(rng), log_uniform(rng, 0.3, 3.0));
  std::vector<double> out(n);
  for (auto& s : out) s = dist(rng);
  return out;
}

}  // namespace

OracleCheck check_predictive_oracle(std::size_t posteriors, std::uint64_t seed, const QuadratureSpec& spec) {
  std::mt19937_64 rng(seed);
  OracleCheck check{"predictive_vs_quadrature", 0, 0.0, 1e-6, false};
  for (std::size_t i = 0; i < posteriors; ++i) {
    const NormalGammaParams prior = random_prior(rng);
    const auto scores = random_class_scores(rng, 2, 40);
    const NormalGammaParams post = posterior_update(prior, collect_stats(scores));
    const StudentT t = predictive(post);
    for (int k = -8; k <= 8; ++k) {
      const double e = t.location + static_cast<double>(k) * t.scale;
      const double closed = student_t_log_density(t, e);
      const double quad = quadrature_predictive(post, e, spec);
      check.max_error = std::max(check.max_error, std::abs(std::expm1(quad - closed)));
      ++check.cases;
    }
  }
  check.passed = check.max_error < check.tolerance;
  return check;
}

OracleCheck check_joint_evidence_route(std::size_t cases, std::uint64_t seed, const QuadratureSpec& spec) {
  std::mt19937_64 rng(seed);
  OracleCheck check{"predictive_ratio_vs_joint_evidence", 0, 0.0, 1e-6, false};
  std::uniform_real_distribution<double> spread(-6.0, 6.0);
  for (std::size_t i = 0; i < cases; ++i) {
    // Alternate between the default prior shared by both classes and random per-class priors.
    const ClassPriors priors =
        i % 2 == 0 ? ClassPriors::shared(default_noninformative_prior()) : ClassPriors{random_prior(rng), random_prior(rng)};
    const BackgroundData data(random_class_scores(rng, 2, 30), random_class_scores(rng, 2, 30));
    const double e = spread(rng);
    const double closed = bayes_log_lr(e, data, priors).value;
    const double quad = quadrature_joint_log_lr(e, data, priors, spec);
    check.max_error = std::max(check.max_error, std::abs(quad - closed) / std::max(1.0, std::abs(closed)));
    ++check.cases;
  }
  check.passed = check.max_error < check.tolerance;
  return check;
}

OracleCheck check_decomposition(std::size_t datasets, std::size_t samples_per_dataset, std::uint64_t seed) {
  static constexpr std::pair<std::size_t, std::size_t> kSizes[] = {{9, 27}, {30, 405}, {2, 3}, {50, 50}, {5, 120}};
  OracleCheck check{"decomposition_identity", 0, 0.0, 1e-9, false};
  const ClassPriors priors = ClassPriors::shared(default_noninformative_prior());
  const GeneratorConfig world;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> spread(-8.0, 8.0);
  for (std::size_t d = 0; d < datasets; ++d) {
    const auto [n1, n2] = kSizes[d % std::size(kSizes)];
    const BackgroundData data = generate_background(world, n1, n2, rng);
    const auto post1 = posterior_update(priors.h1, collect_stats(data.h1()));
    const auto post2 = posterior_update(priors.h2, collect_stats(data.h2()));
    const auto theta1 = sample_params(post1, rng, samples_per_dataset);
    const auto theta2 = sample_params(post2, rng, samples_per_dataset);
    for (std::size_t s = 0; s < samples_per_dataset; ++s) {
      const double e = spread(rng);
      const double r = decomposition_residual(e, data, priors, {theta1[s], theta2[s]});
      check.max_error = std::max(check.max_error, std::abs(r));
      ++check.cases;
    }
  }
  check.passed = check.max_error < check.tolerance;
  return check;
}

PitfallSummary summarize_pitfall(std::size_t n1, std::size_t n2, std::size_t databases, double tail_score,
                                 std::uint64_t seed) {
  const GeneratorConfig world;
  const ClassPriors priors = ClassPriors::shared(default_noninformative_prior());
  std::vector<double> divergences;
  divergences.reserve(databases);
  for (std::size_t i = 0; i < databases; ++i) {
    std::mt19937_64 rng(trial_seed(seed, i));
    const BackgroundData data = generate_background(world, n1, n2, rng);
    const double grid[] = {tail_score};
    divergences.push_back(pitfall_point_mass(data, priors, grid).max_divergence);
  }
  std::sort(divergences.begin(), divergences.end());
  PitfallSummary out;
  out.tail_score = tail_score;
  out.databases = databases;
  if (!divergences.empty()) {
    const std::size_t mid = divergences.size() / 2;
    out.median_divergence = divergences.size() % 2 == 1 ? divergences[mid]
                                                        : 0.5 * (divergences[mid - 1] + divergences[mid]);
  }
  return out;
}

bool OracleSuiteReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.passed; });
}

nlohmann::json OracleSuiteReport::to_json() const {
  nlohmann::json out;
  out["passed"] = all_passed();
  auto& arr = out["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"cases", c.cases}, {"max_error", c.max_error}, {"tolerance", c.tolerance},
                   {"passed", c.passed}});
  }
  out["pitfall"] = {{"tail_score", pitfall.tail_score},
                    {"median_divergence", pitfall.median_divergence},
                    {"databases", pitfall.databases}};
  return out;
}

OracleSuiteReport run_oracle_suite(const OracleSuiteOptions& options) {
  OracleSuiteReport report;
  report.checks.push_back(check_predictive_oracle(options.posteriors, options.seed, options.spec));
  report.checks.push_back(check_joint_evidence_route(options.route_cases, options.seed + 1, options.spec));
  report.checks.push_back(
      check_decomposition(options.decomposition_datasets, options.decomposition_samples, options.seed + 2));
  report.pitfall = summarize_pitfall(9, 27, 101, 8.0, options.seed + 3);
  return report;
}

}  // namespace bayescal
