#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "bayescal/errors.hpp"
#include "bayescal/likelihood_ratio.hpp"
#include "bayescal/oracle_suite.hpp"
#include "bayescal/verification.hpp"

using namespace bayescal;

TEST_SUITE("verification") {

TEST_CASE("QuadratureSpec validation") {
  CHECK_NOTHROW(QuadratureSpec{}.validate());
  CHECK_THROWS_AS((QuadratureSpec{12.0, 1e-8, 100, 2001}.validate()), ValidationError);
  CHECK_THROWS_AS((QuadratureSpec{12.0, 1e-8, 2001, 99}.validate()), ValidationError);
  CHECK_THROWS_AS((QuadratureSpec{0.0, 1e-8, 2001, 2001}.validate()), ValidationError);
  CHECK_THROWS_AS((QuadratureSpec{12.0, 0.5, 2001, 2001}.validate()), ValidationError);
  CHECK_THROWS_AS((QuadratureSpec{12.0, 0.0, 2001, 2001}.validate()), ValidationError);
  CHECK_THROWS_AS(quadrature_predictive({0, 1, 1, 1}, 0.0, QuadratureSpec{12.0, 1e-8, 300, 301}), ValidationError);
}

TEST_CASE("quadrature of the unit posterior predictive") {
  const double q = quadrature_predictive({0.0, 1.0, 1.0, 1.0}, 0.0);
  // log St(0 | 0, sqrt 2, 2) = -ln 4
  CHECK(std::abs(std::expm1(q - (-1.3862943611198906))) < 1e-6);
}

TEST_CASE("quadrature matches the closed-form predictive") {
  const NormalGammaParams posts[] = {
      posterior_update(default_noninformative_prior(), SufficientStats{3, 2.0, 2.0}),
      {-1.2, 0.4, 0.8, 2.5},
      {3.0, 40.01, 20.01, 35.0},
  };
  for (const auto& post : posts) {
    const StudentT t = predictive(post);
    for (double k : {-8.0, -3.0, 0.0, 1.5, 8.0}) {
      const double e = t.location + k * t.scale;
      CHECK(std::abs(std::expm1(quadrature_predictive(post, e) - student_t_log_density(t, e))) < 1e-6);
    }
  }
}

TEST_CASE("quadrature is grid converged") {
  const NormalGammaParams post{0.5, 9.01, 4.51, 6.2};
  const QuadratureSpec fine{12.0, 1e-8, 4001, 4001};
  for (double e : {0.5, 3.0, -6.0}) {
    CHECK(std::abs(quadrature_predictive(post, e) - quadrature_predictive(post, e, fine)) < 1e-8);
  }
}

TEST_CASE("serial and parallel quadrature agree bit for bit") {
  const NormalGammaParams post{0.5, 9.01, 4.51, 6.2};
  CHECK(quadrature_predictive(post, 1.7, {}, Execution::Serial) == quadrature_predictive(post, 1.7, {}, Execution::Parallel));
  const std::vector<double> s{0.2, -1.0, 2.2, 0.9};
  CHECK(quadrature_joint_evidence({0, 0.01, 0.01, 0.01}, s, 0.3, {}, Execution::Serial) ==
        quadrature_joint_evidence({0, 0.01, 0.01, 0.01}, s, 0.3, {}, Execution::Parallel));
}

// Clipping the precision range at the eps and 1 - eps quantiles drops about
// 2 eps of mass, which bounds the log error from below.
constexpr double kClipBias = 3.0 * 1e-8;

TEST_CASE("joint evidence of nothing is the prior's normalization") {
  CHECK(std::abs(quadrature_joint_evidence({0.3, 0.5, 2.0, 3.0}, {}, std::nullopt)) < kClipBias);
  CHECK(std::abs(quadrature_joint_evidence({-1.0, 2.0, 0.7, 0.2}, {}, std::nullopt)) < kClipBias);
  // Gamma shape 0.01 with no data puts the lower precision quantile near exp(-1800).
  CHECK_THROWS_AS(quadrature_joint_evidence(default_noninformative_prior(), {}, std::nullopt), ValidationError);
}

TEST_CASE("single-score evidence equals the prior predictive") {
  const NormalGammaParams prior{0.3, 0.5, 2.0, 3.0};
  for (double s : {-2.0, 0.3, 4.0}) {
    const double one[] = {s};
    const double joint = quadrature_joint_evidence(prior, one, std::nullopt);
    CHECK(std::abs(joint - quadrature_predictive(prior, s)) < kClipBias);
    CHECK(std::abs(joint - student_t_log_density(predictive(prior), s)) < kClipBias);
    CHECK(std::abs(quadrature_joint_evidence(prior, {}, s) - joint) < 1e-12);
  }
}

TEST_CASE("joint-evidence route reproduces the predictive-ratio log-LR") {
  const auto check = check_joint_evidence_route(6, 99);
  CHECK(check.cases == 6);
  CHECK(check.max_error < 1e-6);
  CHECK(check.passed);
}

TEST_CASE("oracle sweep on a handful of posteriors") {
  const auto check = check_predictive_oracle(3, 5);
  CHECK(check.cases == 3 * 17);
  CHECK(check.max_error < 1e-6);
}

TEST_CASE("point-mass posterior pitfall") {
  const auto priors = ClassPriors::shared(default_noninformative_prior());
  const BackgroundData mirror({1, 2, 3, 2.5}, {-1, -2, -3, -2.5});
  const double grid[] = {0.0, 6.0, 12.0};
  const auto report = pitfall_point_mass(mirror, priors, grid);
  REQUIRE(report.points.size() == 3);
  CHECK(std::abs(report.points[0].exact_log_lr) < 1e-12);
  CHECK(std::abs(report.points[0].approx_log_lr) < 1e-12);
  CHECK(report.points[2].divergence > report.points[1].divergence);
  CHECK(report.max_divergence == report.points[2].divergence);
  CHECK_THROWS_AS(pitfall_point_mass(BackgroundData({1}, {1, 2}), priors, grid), InsufficientDataError);
}

TEST_CASE("pitfall divergence is large in the tail at n1 = 9 and shrinks with data") {
  const auto small = summarize_pitfall(9, 27, 201, 8.0, 3);
  const auto large = summarize_pitfall(90, 270, 201, 8.0, 3);
  CHECK(small.median_divergence > 0.5);
  CHECK(large.median_divergence < small.median_divergence);
}

TEST_CASE("decomposition check over small sweeps") {
  const auto check = check_decomposition(5, 200, 4);
  CHECK(check.cases == 1000);
  CHECK(check.passed);
}

}  // TEST_SUITE
