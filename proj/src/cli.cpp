#include "bayescal/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bayescal/errors.hpp"
#include "bayescal/experiment.hpp"
#include "bayescal/likelihood_ratio.hpp"
#include "bayescal/lr_distribution.hpp"
#include "bayescal/oracle_suite.hpp"
#include "bayescal/run_config.hpp"
#include "bayescal/score_csv.hpp"

namespace bayescal::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CommonOptions {
  std::string config_path;
  FlagOverrides flags;
};

void add_common_options(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--config", common.config_path, "JSON config file (flags override it)");
  sub->add_option("--seed", common.flags.seed, "RNG seed");
  sub->add_option("--mu0", common.flags.mu0, "Normal-Gamma prior location");
  sub->add_option("--beta", common.flags.beta, "Normal-Gamma prior location-precision scaling");
  sub->add_option("--a", common.flags.a, "Normal-Gamma prior gamma shape");
  sub->add_option("--b", common.flags.b, "Normal-Gamma prior gamma rate");
  sub->add_option("--variance-floor", common.flags.variance_floor, "Lower bound on the plugin variance");
}

json resolve(const CommonOptions& common) {
  json file_config;
  if (!common.config_path.empty()) file_config = load_json_file(common.config_path);
  return resolve_run_config(file_config, common.flags);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

json priors_json(const ClassPriors& p) { return {{"h1", to_json(p.h1)}, {"h2", to_json(p.h2)}}; }

json student_t_json(const StudentT& t) {
  return {{"location", t.location}, {"scale", t.scale}, {"dof", t.dof}};
}

void require_finite_score(double e) {
  if (!std::isfinite(e)) throw ValidationError("--score must be finite");
}

// ---- llr ----------------------------------------------------------------

struct LlrOptions {
  CommonOptions common;
  std::string background;
  double score = 0.0;
  std::string method = "both";
};

json compute_llr_json(const LlrOptions& opt) {
  require_finite_score(opt.score);
  const BackgroundData data = load_background_csv(opt.background);
  const json resolved = resolve(opt.common);
  const ClassPriors priors = priors_from_config(resolved);
  const double floor = resolved.at("variance_floor").get<double>();

  json j;
  j["score"] = opt.score;
  j["method"] = opt.method;
  j["n_h1"] = data.n1();
  j["n_h2"] = data.n2();
  if (opt.method == "plugin" || opt.method == "both") {
    const GaussianParams theta = fit_plugin(data, floor);
    const LogLR llr = plugin_log_lr(opt.score, theta);
    j["log_lr_plugin"] = llr.value;
    j["log10_lr_plugin"] = llr.log10();
    j["plugin_params"] = {{"mu1", theta.mu1}, {"mu2", theta.mu2}, {"lambda1", theta.lambda1}, {"lambda2", theta.lambda2}};
  }
  if (opt.method == "bayes" || opt.method == "both") {
    const BayesianCalibration cal = BayesianCalibration::fit(data, priors);
    const LogLR llr = cal.log_lr(opt.score);
    j["log_lr_bayes"] = llr.value;
    j["log10_lr_bayes"] = llr.log10();
    j["predictive"] = {{"h1", student_t_json(cal.h1)}, {"h2", student_t_json(cal.h2)}};
  }
  j["prior"] = priors_json(priors);
  j["variance_floor"] = floor;
  return j;
}

// ---- decide -------------------------------------------------------------

struct DecideOptions {
  LlrOptions llr;
  std::optional<double> log_lr;
  double pi1 = 0.5;
  double cost_false_convict = 1.0;
  double cost_false_acquit = 1.0;
};

json compute_decide_json(DecideOptions opt) {
  const TrialPrior prior(opt.pi1);
  const DecisionPolicy policy(opt.cost_false_convict, opt.cost_false_acquit);
  json j;
  LogLR llr{0.0, Method::Bayesian};
  if (opt.log_lr) {
    if (!std::isfinite(*opt.log_lr)) throw ValidationError("--log-lr must be finite");
    llr = {*opt.log_lr, opt.llr.method == "plugin" ? Method::Plugin : Method::Bayesian};
    j["source"] = "log_lr";
  } else {
    if (opt.llr.background.empty()) throw ValidationError("decide needs --log-lr or --background with --score");
    opt.llr.method = opt.llr.method == "plugin" ? "plugin" : "bayes";
    const json l = compute_llr_json(opt.llr);
    const bool plugin = opt.llr.method == "plugin";
    llr = {l.at(plugin ? "log_lr_plugin" : "log_lr_bayes").get<double>(), plugin ? Method::Plugin : Method::Bayesian};
    j["source"] = "background";
    j["score"] = opt.llr.score;
    j["prior"] = l.at("prior");
    j["variance_floor"] = l.at("variance_floor");
  }
  const double post = posterior_log_odds(llr, prior);
  j["method"] = to_string(llr.method);
  j["log_lr"] = llr.value;
  j["pi1"] = prior.pi1();
  j["prior_log_odds"] = prior.log_odds();
  j["posterior_log_odds"] = post;
  j["threshold_log"] = policy.log_threshold();
  j["cost_false_convict"] = policy.cost_false_convict();
  j["cost_false_acquit"] = policy.cost_false_acquit();
  j["decision"] = to_string(decide(post, policy));
  return j;
}

// ---- verify -------------------------------------------------------------

struct VerifyOptions {
  std::string report_path;
  std::uint64_t seed = 1;
  std::size_t posteriors = 50;
  std::size_t route_cases = 20;
  std::size_t decomposition_samples = 2000;
  std::size_t grid = 2001;
};

int run_verify(const VerifyOptions& opt, std::ostream& out) {
  OracleSuiteOptions suite;
  suite.seed = opt.seed;
  suite.posteriors = opt.posteriors;
  suite.route_cases = opt.route_cases;
  suite.decomposition_samples = opt.decomposition_samples;
  suite.spec.grid_mu = opt.grid;
  suite.spec.grid_lambda = opt.grid;
  suite.spec.validate();
  if (!opt.report_path.empty()) {
    // Fail on an unwritable report path before spending time on the suite.
    const fs::path parent = fs::path(opt.report_path).parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) throw IoError("report directory does not exist: " + parent.string());
  }
  const OracleSuiteReport report = run_oracle_suite(suite);
  json j = report.to_json();
  j["options"] = {{"seed", opt.seed},
                  {"posteriors", opt.posteriors},
                  {"route_cases", opt.route_cases},
                  {"decomposition_datasets", suite.decomposition_datasets},
                  {"decomposition_samples", opt.decomposition_samples},
                  {"grid_mu", suite.spec.grid_mu},
                  {"grid_lambda", suite.spec.grid_lambda},
                  {"mu_halfwidth_sds", suite.spec.mu_halfwidth_sds},
                  {"lambda_quantile_eps", suite.spec.lambda_quantile_eps}};
  const std::string text = j.dump(2) + "\n";
  if (!opt.report_path.empty()) write_text_file(opt.report_path, text);
  out << text;
  return report.all_passed() ? kOk : kToleranceBreach;
}

// ---- simulate -----------------------------------------------------------

struct SimulateOptions {
  CommonOptions common;
  std::string out_dir = ".";
};

std::string curve_csv(const ErrorCurve& curve) {
  std::ostringstream s;
  s << "prior_log_odds,prior_log10_odds,error_plugin,error_bayes,error_prior_only,stderr_plugin,stderr_bayes\n";
  for (const auto& p : curve.points) {
    s << format_double(p.prior_log_odds) << ',' << format_double(p.prior_log_odds / std::numbers::ln10) << ','
      << format_double(p.error_plugin) << ',' << format_double(p.error_bayes) << ','
      << format_double(p.error_prior_only) << ',' << format_double(p.stderr_plugin) << ','
      << format_double(p.stderr_bayes) << '\n';
  }
  return s.str();
}

std::string confidence_csv(const std::vector<ConfidenceRow>& rows) {
  std::ostringstream s;
  s << "n1,n2,method,hypothesis,mean_log_lr,stderr,mean_log10_lr,stderr_log10\n";
  for (const auto& r : rows) {
    s << r.n1 << ',' << r.n2 << ',' << to_string(r.method) << ',' << to_string(r.hypothesis) << ','
      << format_double(r.mean_log_lr) << ',' << format_double(r.std_error) << ','
      << format_double(r.mean_log_lr / std::numbers::ln10) << ',' << format_double(r.std_error / std::numbers::ln10)
      << '\n';
  }
  return s.str();
}

int run_simulate(const SimulateOptions& opt, std::ostream& out) {
  const json resolved = resolve(opt.common);
  const GeneratorConfig gen = generator_from_config(resolved);
  const ExperimentConfig exp = experiment_from_config(resolved);
  const ConfidenceConfig conf = confidence_from_config(resolved);
  const fs::path dir(opt.out_dir);
  ensure_directory(dir);

  const ErrorCurve curve = run_experiment(gen, exp);
  const auto rows = confidence_curve(gen, conf);

  json degenerate_by_size = json::array();
  for (std::size_t i = 0; i < rows.size(); i += 4) {
    degenerate_by_size.push_back({{"n1", rows[i].n1}, {"n2", rows[i].n2}, {"degenerate_trials", rows[i].degenerate_trials}});
  }
  const json meta = {{"config", resolved},
                     {"seed", exp.seed},
                     {"experiment", {{"trials_used", curve.trials_used}, {"degenerate_trials", curve.degenerate_trials}}},
                     {"confidence", degenerate_by_size},
                     {"outputs", {"curve.csv", "confidence.csv", "run_meta.json"}}};

  write_text_file(dir / "curve.csv", curve_csv(curve));
  write_text_file(dir / "confidence.csv", confidence_csv(rows));
  write_text_file(dir / "run_meta.json", meta.dump(2) + "\n");
  out << json{{"out_dir", dir.string()},
              {"curve_rows", curve.points.size()},
              {"confidence_rows", rows.size()},
              {"degenerate_trials", curve.degenerate_trials}}
             .dump(2)
      << "\n";
  return kOk;
}

// ---- lr-distribution ----------------------------------------------------

struct LrDistributionOptions {
  CommonOptions common;
  double score = 0.0;
  std::optional<std::size_t> n1;
  std::optional<std::size_t> n2;
  std::string out_path;
};

int run_lr_distribution(const LrDistributionOptions& opt, std::ostream& out) {
  require_finite_score(opt.score);
  json resolved = resolve(opt.common);
  if (opt.n1) resolved["lr_distribution"]["n1"] = *opt.n1;
  if (opt.n2) resolved["lr_distribution"]["n2"] = *opt.n2;
  resolved["lr_distribution"]["score"] = opt.score;
  const json& section = resolved.at("lr_distribution");
  const GeneratorConfig gen = generator_from_config(resolved);
  const ClassPriors priors = priors_from_config(resolved);
  const auto count = [&](const char* key) {
    const json& v = section.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw ValidationError(std::string("lr_distribution.") + key + " must be a non-negative integer");
    return v.get<std::size_t>();
  };
  const auto report = lr_distribution_demo(opt.score, gen, count("n1"), count("n2"), count("trials"),
                                           resolved.at("seed").get<std::uint64_t>(), priors,
                                           resolved.at("variance_floor").get<double>());
  const json j = {{"score", report.score},
                  {"mu", report.mu},
                  {"sigma", report.sigma},
                  {"mu_stderr", report.mu_stderr},
                  {"mean_bayes_log_lr", report.mean_bayes_log_lr},
                  {"mu_minus_bayes_in_stderrs", (report.mu - report.mean_bayes_log_lr) / report.mu_stderr},
                  {"plugin_log_lr_per_trial", report.plugin_log_lr_per_trial},
                  {"bayes_log_lr_per_trial", report.bayes_log_lr_per_trial},
                  {"config", resolved}};
  const std::string text = j.dump(2) + "\n";
  if (!opt.out_path.empty()) {
    write_text_file(opt.out_path, text);
  } else {
    out << text;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plugin and Bayesian likelihood-ratio calibration for recognizer scores", "bayescal"};
  app.require_subcommand(1);

  LlrOptions llr;
  auto* llr_cmd = app.add_subcommand("llr", "Log-likelihood-ratio of one score given background data");
  llr_cmd->add_option("--background", llr.background, "CSV file with header label,score")->required();
  llr_cmd->add_option("--score", llr.score, "Trial score")->required();
  llr_cmd->add_option("--method", llr.method, "plugin, bayes or both")->check(CLI::IsMember({"plugin", "bayes", "both"}));
  add_common_options(llr_cmd, llr.common);

  DecideOptions dec;
  dec.llr.method = "bayes";
  auto* decide_cmd = app.add_subcommand("decide", "Bayes decision from a log-LR and a hypothesis prior");
  decide_cmd->add_option("--background", dec.llr.background, "CSV file with header label,score");
  decide_cmd->add_option("--score", dec.llr.score, "Trial score");
  decide_cmd->add_option("--log-lr", dec.log_lr, "Use this natural-log LR instead of computing one");
  decide_cmd->add_option("--method", dec.llr.method, "plugin or bayes")->check(CLI::IsMember({"plugin", "bayes"}));
  decide_cmd->add_option("--pi1", dec.pi1, "Prior probability of H1")->required();
  decide_cmd->add_option("--cost-false-convict", dec.cost_false_convict, "Cost of a false conviction");
  decide_cmd->add_option("--cost-false-acquit", dec.cost_false_acquit, "Cost of a false acquittal");
  add_common_options(decide_cmd, dec.llr.common);

  VerifyOptions ver;
  auto* verify_cmd = app.add_subcommand("verify", "Run the quadrature and identity oracle suite");
  verify_cmd->add_option("--report", ver.report_path, "Write the JSON report here");
  verify_cmd->add_option("--seed", ver.seed, "RNG seed for the randomized sweeps");
  verify_cmd->add_option("--posteriors", ver.posteriors, "Random posteriors in the predictive sweep");
  verify_cmd->add_option("--route-cases", ver.route_cases, "Random (data, score) cases for the joint-evidence route");
  verify_cmd->add_option("--decomposition-samples", ver.decomposition_samples, "Parameter samples per dataset");
  verify_cmd->add_option("--grid", ver.grid, "Quadrature nodes per dimension (odd, >= 101)");

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Resampling experiment: error curves and confidence table");
  simulate_cmd->add_option("--out", sim.out_dir, "Output directory");
  simulate_cmd->add_option("--trials", sim.common.flags.trials, "Override the trial counts");
  add_common_options(simulate_cmd, sim.common);

  LrDistributionOptions lrd;
  auto* lrd_cmd = app.add_subcommand("lr-distribution", "Plugin log-LR mean/sd over resampled databases");
  lrd_cmd->add_option("--score", lrd.score, "Fixed trial score")->required();
  lrd_cmd->add_option("--n1", lrd.n1, "H1 background scores per database");
  lrd_cmd->add_option("--n2", lrd.n2, "H2 background scores per database");
  lrd_cmd->add_option("--trials", lrd.common.flags.trials, "Resampled databases");
  lrd_cmd->add_option("--out", lrd.out_path, "Write JSON here instead of stdout");
  add_common_options(lrd_cmd, lrd.common);

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (llr_cmd->parsed()) {
      out << compute_llr_json(llr).dump(2) << "\n";
      return kOk;
    }
    if (decide_cmd->parsed()) {
      out << compute_decide_json(dec).dump(2) << "\n";
      return kOk;
    }
    if (verify_cmd->parsed()) return run_verify(ver, out);
    if (simulate_cmd->parsed()) return run_simulate(sim, out);
    if (lrd_cmd->parsed()) return run_lr_distribution(lrd, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid config: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}

}  // namespace bayescal::cli
