#pragma once

#include <filesystem>
#include <optional>

#include "json.hpp"

#include "bayescal/conjugate_bayes.hpp"
#include "bayescal/experiment.hpp"
#include "bayescal/generator.hpp"

namespace bayescal {

/// Flag values given on the command line; unset flags leave the file/default value.
struct FlagOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> mu0;
  std::optional<double> beta;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> variance_floor;
  std::optional<std::size_t> trials;
};

/// Every recognised key with its default value.
nlohmann::json default_run_config();

/// defaults <- config file <- flags. Unknown keys in `file_config` are rejected.
/// `prior_h1` / `prior_h2` are optional partial objects layered over `prior`;
/// prior flags win over both.
nlohmann::json resolve_run_config(const nlohmann::json& file_config, const FlagOverrides& flags);

/// Throws ParseError for malformed JSON and IoError if unreadable.
nlohmann::json load_json_file(const std::filesystem::path& path);

ClassPriors priors_from_config(const nlohmann::json& resolved);
GeneratorConfig generator_from_config(const nlohmann::json& resolved);
ExperimentConfig experiment_from_config(const nlohmann::json& resolved);
ConfidenceConfig confidence_from_config(const nlohmann::json& resolved);

nlohmann::json to_json(const NormalGammaParams& p);

}  // namespace bayescal
