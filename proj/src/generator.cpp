#include "bayescal/generator.hpp"

#include <cmath>

#include "bayescal/errors.hpp"

namespace bayescal {

void GeneratorConfig::validate() const {
  if (!std::isfinite(mu1_true) || !std::isfinite(mu2_true) || !std::isfinite(shift_location)) {
    throw ValidationError("generator means and shift location must be finite");
  }
  if (!(sigma1_true > 0.0) || !(sigma2_true > 0.0) || !std::isfinite(sigma1_true) || !std::isfinite(sigma2_true)) {
    throw ValidationError("generator sigmas must be positive and finite");
  }
  if (!(shift_scale > 0.0) || !std::isfinite(shift_scale)) {
    throw ValidationError("generator shift_scale must be positive and finite");
  }
}

std::vector<double> generate_scores(const GeneratorConfig& config, Hypothesis hypothesis, std::size_t count,
                                    std::mt19937_64& rng, ScoreRole role) {
  std::normal_distribution<double> dist(config.mean(hypothesis), config.sigma(hypothesis));
  std::vector<double> out(count);
  for (auto& s : out) s = dist(rng);
  if (role == ScoreRole::Test && (config.shift_scale != 1.0 || config.shift_location != 0.0)) {
    for (auto& s : out) s = config.shift_scale * s + config.shift_location;
  }
  return out;
}

std::vector<double> generate_scores(const GeneratorConfig& config, Hypothesis hypothesis, std::size_t count,
                                    std::uint64_t seed, ScoreRole role) {
  config.validate();
  std::mt19937_64 rng(seed);
  return generate_scores(config, hypothesis, count, rng, role);
}

BackgroundData generate_background(const GeneratorConfig& config, std::size_t n1, std::size_t n2,
                                   std::mt19937_64& rng) {
  auto h1 = generate_scores(config, Hypothesis::H1, n1, rng);
  auto h2 = generate_scores(config, Hypothesis::H2, n2, rng);
  return BackgroundData(std::move(h1), std::move(h2));
}

}  // namespace bayescal
