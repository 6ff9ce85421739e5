#include "bayescal/run_config.hpp"

#include <fstream>
#include <string>

#include "bayescal/errors.hpp"

namespace bayescal {

using nlohmann::json;

json to_json(const NormalGammaParams& p) { return {{"mu0", p.mu0}, {"beta", p.beta}, {"a", p.a}, {"b", p.b}}; }

json default_run_config() {
  const GeneratorConfig gen;
  const ExperimentConfig exp;
  const ConfidenceConfig conf;
  json sizes = json::array();
  for (const auto& [n1, n2] : conf.sizes) sizes.push_back({n1, n2});
  return {
      {"seed", 1},
      {"variance_floor", kDefaultVarianceFloor},
      {"prior", to_json(default_noninformative_prior())},
      {"generator",
       {{"mu1_true", gen.mu1_true},
        {"mu2_true", gen.mu2_true},
        {"sigma1_true", gen.sigma1_true},
        {"sigma2_true", gen.sigma2_true},
        {"shift_location", gen.shift_location},
        {"shift_scale", gen.shift_scale}}},
      {"experiment",
       {{"n1", exp.n1},
        {"n2", exp.n2},
        {"trials", exp.trials},
        {"n_test_per_class", exp.n_test_per_class},
        {"prior_grid", exp.prior_grid}}},
      {"confidence", {{"sizes", sizes}, {"trials", conf.trials}, {"n_test_per_class", conf.n_test_per_class}}},
      {"lr_distribution", {{"n1", 9}, {"n2", 27}, {"trials", 1000}}},
  };
}

namespace {

void reject_unknown_keys(const json& user, const json& reference, const std::string& path) {
  if (!user.is_object()) return;
  for (const auto& [key, value] : user.items()) {
    const bool per_class_prior = path.empty() && (key == "prior_h1" || key == "prior_h2");
    if (per_class_prior) {
      reject_unknown_keys(value, reference.at("prior"), key);
      continue;
    }
    if (!reference.is_object() || !reference.contains(key)) {
      throw ValidationError("unknown config key '" + (path.empty() ? key : path + "." + key) + "'");
    }
    const json& ref = reference.at(key);
    if (ref.is_object()) {
      if (!value.is_object()) throw ValidationError("config key '" + key + "' must be an object");
      reject_unknown_keys(value, ref, path.empty() ? key : path + "." + key);
    }
  }
}

void apply_prior_flags(json& prior, const FlagOverrides& flags) {
  if (flags.mu0) prior["mu0"] = *flags.mu0;
  if (flags.beta) prior["beta"] = *flags.beta;
  if (flags.a) prior["a"] = *flags.a;
  if (flags.b) prior["b"] = *flags.b;
}

template <typename T>
T get_as(const json& j, const char* key, const char* section) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config value ") + section + "." + key + " has the wrong type");
  }
}

std::size_t get_count(const json& j, const char* key, const char* section) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ValidationError(std::string("config value ") + section + "." + key + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

NormalGammaParams prior_from(const json& j, const char* section) {
  NormalGammaParams p{get_as<double>(j, "mu0", section), get_as<double>(j, "beta", section),
                      get_as<double>(j, "a", section), get_as<double>(j, "b", section)};
  p.validate();
  return p;
}

CalibrationSettings calibration_from(const json& resolved) {
  CalibrationSettings c;
  c.priors = priors_from_config(resolved);
  c.variance_floor = get_as<double>(resolved, "variance_floor", "root");
  return c;
}

std::uint64_t seed_from(const json& resolved) {
  const json& v = resolved.at("seed");
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ValidationError("config value seed must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

json resolve_run_config(const json& file_config, const FlagOverrides& flags) {
  json resolved = default_run_config();
  if (!file_config.is_null()) {
    if (!file_config.is_object()) throw ValidationError("config must be a JSON object");
    reject_unknown_keys(file_config, resolved, "");
    resolved.merge_patch(file_config);
  }
  if (flags.seed) resolved["seed"] = *flags.seed;
  if (flags.variance_floor) resolved["variance_floor"] = *flags.variance_floor;
  if (flags.trials) {
    resolved["experiment"]["trials"] = *flags.trials;
    resolved["confidence"]["trials"] = *flags.trials;
    resolved["lr_distribution"]["trials"] = *flags.trials;
  }
  // Per-class priors are stored fully resolved so the echoed config is self-contained.
  for (const char* key : {"prior_h1", "prior_h2"}) {
    if (resolved.contains(key)) {
      json merged = resolved["prior"];
      merged.merge_patch(resolved[key]);
      resolved[key] = merged;
    }
  }
  apply_prior_flags(resolved["prior"], flags);
  for (const char* key : {"prior_h1", "prior_h2"}) {
    if (resolved.contains(key)) apply_prior_flags(resolved[key], flags);
  }
  return resolved;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

ClassPriors priors_from_config(const json& resolved) {
  const NormalGammaParams shared = prior_from(resolved.at("prior"), "prior");
  ClassPriors priors = ClassPriors::shared(shared);
  if (resolved.contains("prior_h1")) priors.h1 = prior_from(resolved.at("prior_h1"), "prior_h1");
  if (resolved.contains("prior_h2")) priors.h2 = prior_from(resolved.at("prior_h2"), "prior_h2");
  return priors;
}

GeneratorConfig generator_from_config(const json& resolved) {
  const json& g = resolved.at("generator");
  GeneratorConfig gen{get_as<double>(g, "mu1_true", "generator"),       get_as<double>(g, "mu2_true", "generator"),
                      get_as<double>(g, "sigma1_true", "generator"),    get_as<double>(g, "sigma2_true", "generator"),
                      get_as<double>(g, "shift_location", "generator"), get_as<double>(g, "shift_scale", "generator")};
  gen.validate();
  return gen;
}

ExperimentConfig experiment_from_config(const json& resolved) {
  const json& e = resolved.at("experiment");
  ExperimentConfig exp;
  exp.n1 = get_count(e, "n1", "experiment");
  exp.n2 = get_count(e, "n2", "experiment");
  exp.trials = get_count(e, "trials", "experiment");
  exp.n_test_per_class = get_count(e, "n_test_per_class", "experiment");
  exp.prior_grid = get_as<std::vector<double>>(e, "prior_grid", "experiment");
  exp.seed = seed_from(resolved);
  exp.calibration = calibration_from(resolved);
  exp.validate();
  return exp;
}

ConfidenceConfig confidence_from_config(const json& resolved) {
  const json& c = resolved.at("confidence");
  ConfidenceConfig conf;
  conf.sizes.clear();
  const json& sizes = c.at("sizes");
  if (!sizes.is_array()) throw ValidationError("confidence.sizes must be an array of [n1, n2] pairs");
  for (const auto& pair : sizes) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer() ||
        pair[0].get<std::int64_t>() < 0 || pair[1].get<std::int64_t>() < 0) {
      throw ValidationError("confidence.sizes entries must be [n1, n2] pairs of non-negative integers");
    }
    conf.sizes.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
  }
  conf.trials = get_count(c, "trials", "confidence");
  conf.n_test_per_class = get_count(c, "n_test_per_class", "confidence");
  conf.seed = seed_from(resolved);
  conf.calibration = calibration_from(resolved);
  conf.validate();
  return conf;
}

}  // namespace bayescal
