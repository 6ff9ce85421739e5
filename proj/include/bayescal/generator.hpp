#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "bayescal/score_model.hpp"

namespace bayescal {

/// Synthetic two-Gaussian score world. The shift applies to test scores only:
/// test = shift_scale * score + shift_location.
struct GeneratorConfig {
  double mu1_true = 2.0;
  double mu2_true = -2.0;
  double sigma1_true = 1.0;
  double sigma2_true = 1.0;
  double shift_location = 0.0;
  double shift_scale = 1.0;

  void validate() const;
  double mean(Hypothesis h) const { return h == Hypothesis::H1 ? mu1_true : mu2_true; }
  double sigma(Hypothesis h) const { return h == Hypothesis::H1 ? sigma1_true : sigma2_true; }
};

enum class ScoreRole { Background, Test };

std::vector<double> generate_scores(const GeneratorConfig& config, Hypothesis hypothesis,
                                    std::size_t count, std::mt19937_64& rng,
                                    ScoreRole role = ScoreRole::Background);

std::vector<double> generate_scores(const GeneratorConfig& config, Hypothesis hypothesis,
                                    std::size_t count, std::uint64_t seed,
                                    ScoreRole role = ScoreRole::Background);

BackgroundData generate_background(const GeneratorConfig& config, std::size_t n1, std::size_t n2,
                                   std::mt19937_64& rng);

/// Seed for trial `trial` of a run seeded with `seed`. Hashed through
/// seed_seq so that nearby run seeds give unrelated trial streams.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace bayescal
