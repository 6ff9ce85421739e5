#include <cmath>
#include <random>
#include <vector>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "doctest.h"

#include "bayescal/conjugate_bayes.hpp"
#include "bayescal/errors.hpp"
#include "bayescal/numerics.hpp"

using namespace bayescal;

namespace {

void check_rel(double actual, double expected, double tol) {
  CHECK(std::abs(actual - expected) <= tol * std::max(1.0, std::abs(expected)));
}

NormalGammaParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> loc(-3, 3), logp(std::log(0.05), std::log(5.0));
  return {loc(rng), std::exp(logp(rng)), std::exp(logp(rng)), std::exp(logp(rng))};
}

}  // namespace

TEST_SUITE("conjugate_bayes") {

TEST_CASE("default non-informative prior") {
  const auto p = default_noninformative_prior();
  CHECK(p.mu0 == 0.0);
  CHECK(p.beta == 0.01);
  CHECK(p.a == 0.01);
  CHECK(p.b == 0.01);
  CHECK(p.a / p.b == doctest::Approx(1.0));
  CHECK(p.a / (p.b * p.b) == doctest::Approx(100.0));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((NormalGammaParams{0, 0, 1, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((NormalGammaParams{0, 1, -1, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((NormalGammaParams{0, 1, 1, INFINITY}.validate()), ValidationError);
  CHECK_THROWS_AS((NormalGammaParams{NAN, 1, 1, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((StudentT{0, 0, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((StudentT{0, 1, 0}.validate()), ValidationError);
}

TEST_CASE("posterior_update with no data returns the prior") {
  const NormalGammaParams prior{0.3, 0.2, 1.7, 0.9};
  CHECK(posterior_update(prior, SufficientStats{}) == prior);
}

TEST_CASE("posterior_update hand-evaluated example") {
  const auto post = posterior_update(default_noninformative_prior(), SufficientStats{3, 2.0, 2.0});
  CHECK(post.mu0 == doctest::Approx(6.0 / 3.01).epsilon(1e-15));
  CHECK(post.beta == doctest::Approx(3.01).epsilon(1e-15));
  CHECK(post.a == doctest::Approx(1.51).epsilon(1e-15));
  CHECK(post.b == doctest::Approx(0.01 + 1.0 + (0.01 * 3 * 4) / (2 * 3.01)).epsilon(1e-15));
}

TEST_CASE("sequential updates equal one batched update") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist(0.5, 2.0);
  std::uniform_int_distribution<int> size(0, 50);
  for (int rep = 0; rep < 300; ++rep) {
    const auto prior = random_params(rng);
    std::vector<double> a(static_cast<std::size_t>(size(rng))), b(static_cast<std::size_t>(size(rng)));
    for (auto& x : a) x = dist(rng);
    for (auto& x : b) x = dist(rng);
    std::vector<double> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const auto seq = posterior_update(posterior_update(prior, collect_stats(a)), collect_stats(b));
    const auto batch = posterior_update(prior, collect_stats(both));
    check_rel(seq.mu0, batch.mu0, 1e-10);
    check_rel(seq.beta, batch.beta, 1e-10);
    check_rel(seq.a, batch.a, 1e-10);
    check_rel(seq.b, batch.b, 1e-10);
  }
}

TEST_CASE("predictive of a unit posterior") {
  const auto t = predictive({0.0, 1.0, 1.0, 1.0});
  CHECK(t.location == 0.0);
  CHECK(t.scale == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(t.dof == 2.0);
  // Independent check against boost's Student-t density.
  const double expected = std::log(boost::math::pdf(boost::math::students_t_distribution<double>(2.0), 0.0) / std::sqrt(2.0));
  CHECK(student_t_log_density(t, 0.0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(student_t_log_density(t, 0.0) == doctest::Approx(-1.3862943611198906).epsilon(1e-14));
}

TEST_CASE("predictive dof is twice the posterior shape") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(rng);
    CHECK(predictive(p).dof == 2.0 * p.a);
  }
}

TEST_CASE("predictive approaches the generating Gaussian at large n") {
  const double mu_true = 1.5, sigma_true = 0.8;
  std::mt19937_64 rng(17);
  std::normal_distribution<double> dist(mu_true, sigma_true);
  std::vector<double> s(100000);
  for (auto& x : s) x = dist(rng);
  const auto t = predictive(posterior_update(default_noninformative_prior(), collect_stats(s)));
  CHECK(std::abs(t.location - mu_true) < 0.01 * mu_true);
  CHECK(std::abs(t.scale - sigma_true) < 0.01 * sigma_true);
  CHECK(t.dof > 1e5);
}

TEST_CASE("student_t_log_density special cases and symmetry") {
  CHECK(student_t_log_density({0, 1, 1}, 0.0) == doctest::Approx(-1.1447298858494002).epsilon(1e-15));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(0, 30);
  for (int i = 0; i < 100; ++i) {
    const StudentT t{1.3, 0.7, 3.5};
    const double off = d(rng);
    CHECK(student_t_log_density(t, t.location + off) == doctest::Approx(student_t_log_density(t, t.location - off)).epsilon(1e-14));
  }
}

TEST_CASE("student_t_log_density agrees with boost over random parameters") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> loc(-5, 5), logs(std::log(0.1), std::log(10.0)), lognu(std::log(0.05), std::log(1e4));
  std::uniform_real_distribution<double> z(-40, 40);
  for (int i = 0; i < 500; ++i) {
    const StudentT t{loc(rng), std::exp(logs(rng)), std::exp(lognu(rng))};
    const double e = t.location + z(rng) * t.scale;
    const boost::math::students_t_distribution<double> ref(t.dof);
    const double expected = std::log(boost::math::pdf(ref, (e - t.location) / t.scale)) - std::log(t.scale);
    CHECK(student_t_log_density(t, e) == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("student_t density integrates to one") {
  for (double dof : {1.0, 2.0, 5.0, 30.0}) {
    const StudentT t{0.4, 1.7, dof};
    const double half = 200.0 * t.scale;
    const int n = 400001;
    const double h = 2 * half / (n - 1);
    CompensatedSum acc;
    for (int i = 0; i < n; ++i) {
      const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
      acc.add(w * std::exp(student_t_log_density(t, t.location - half + i * h)));
    }
    const double tails = 2.0 * boost::math::cdf(boost::math::students_t_distribution<double>(dof), -200.0);
    CHECK(std::abs(acc.value() + tails - 1.0) < 1e-4);
  }
}

TEST_CASE("student_t tails dominate the moment-matched Gaussian") {
  const NormalGammaParams prior = default_noninformative_prior();
  for (std::size_t n : {5u, 9u, 27u, 100u}) {
    std::vector<double> s(n);
    std::mt19937_64 rng(n);
    std::normal_distribution<double> dist(0, 1);
    for (auto& x : s) x = dist(rng);
    const auto t = predictive(posterior_update(prior, collect_stats(s)));
    const double variance = t.scale * t.scale * t.dof / (t.dof - 2.0);
    for (double k : {8.0, 15.0, 40.0}) {
      const double e = t.location + k * std::sqrt(variance);
      CHECK(student_t_log_density(t, e) > gaussian_log_density(e, t.location, 1.0 / variance));
    }
  }
}

TEST_CASE("normal_gamma_log_density matches the product of boost densities") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_params(rng);
    const double lambda = boost::math::quantile(boost::math::gamma_distribution<double>(p.a, 1.0 / p.b), 0.3);
    const double mean = p.mu0 + 0.4 / std::sqrt(p.beta * lambda);
    const double expected =
        std::log(boost::math::pdf(boost::math::gamma_distribution<double>(p.a, 1.0 / p.b), lambda)) +
        std::log(boost::math::pdf(boost::math::normal_distribution<double>(p.mu0, 1.0 / std::sqrt(p.beta * lambda)), mean));
    CHECK(normal_gamma_log_density(p, mean, lambda) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("sample_params moments and determinism") {
  const NormalGammaParams post{1.0, 3.01, 1.51, 1.03};
  const auto draws = sample_params(post, 42, 1000000);
  CompensatedSum lambda_sum, mu_sum;
  for (const auto& d : draws) {
    lambda_sum.add(d.precision);
    mu_sum.add(d.mean);
  }
  const double n = static_cast<double>(draws.size());
  const double lambda_mean = lambda_sum.value() / n;
  CHECK(std::abs(lambda_mean - post.a / post.b) < 0.01 * post.a / post.b);

  const double mu_mean = mu_sum.value() / n;
  CompensatedSum ss;
  for (const auto& d : draws) ss.add((d.mean - mu_mean) * (d.mean - mu_mean));
  const double se = std::sqrt(ss.value() / (n - 1) / n);
  CHECK(std::abs(mu_mean - post.mu0) < 3.0 * se);

  const auto again = sample_params(post, 42, 1000);
  const auto other = sample_params(post, 43, 1000);
  bool identical = true;
  for (std::size_t i = 0; i < again.size(); ++i) {
    identical &= again[i].mean == draws[i].mean && again[i].precision == draws[i].precision;
  }
  CHECK(identical);
  CHECK(other[0].mean != again[0].mean);
}

}  // TEST_SUITE
