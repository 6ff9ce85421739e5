#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "bayescal/verification.hpp"

namespace bayescal {

struct OracleCheck {
  std::string name;
  std::size_t cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Closed-form predictive vs quadrature over randomized posteriors, 17
/// e values per posterior spread over location +/- 8 scale. Error is the
/// relative density error |exp(quad - closed) - 1|.
OracleCheck check_predictive_oracle(std::size_t posteriors, std::uint64_t seed,
                                    const QuadratureSpec& spec = {});

/// Predictive-ratio log-LR vs joint-evidence quadrature log-LR on randomized
/// (data, e) cases. Error is |diff| / max(1, |log-LR|).
OracleCheck check_joint_evidence_route(std::size_t cases, std::uint64_t seed,
                                       const QuadratureSpec& spec = {});

/// max |decomposition_residual| over `samples_per_dataset` posterior-sampled
/// parameter sets for each of `datasets` synthetic databases.
OracleCheck check_decomposition(std::size_t datasets, std::size_t samples_per_dataset,
                                std::uint64_t seed);

/// Median over resampled 9/27 databases of the point-mass pitfall divergence
/// at a tail score, reported (not gated) alongside the oracle checks.
struct PitfallSummary {
  double tail_score = 0.0;
  double median_divergence = 0.0;
  std::size_t databases = 0;
};

PitfallSummary summarize_pitfall(std::size_t n1, std::size_t n2, std::size_t databases,
                                 double tail_score, std::uint64_t seed);

struct OracleSuiteOptions {
  std::size_t posteriors = 50;
  std::size_t route_cases = 20;
  std::size_t decomposition_datasets = 5;
  std::size_t decomposition_samples = 2000;
  std::uint64_t seed = 1;
  QuadratureSpec spec{};
};

struct OracleSuiteReport {
  std::vector<OracleCheck> checks;
  PitfallSummary pitfall;
  bool all_passed() const;
  nlohmann::json to_json() const;
};

OracleSuiteReport run_oracle_suite(const OracleSuiteOptions& options);

}  // namespace bayescal
