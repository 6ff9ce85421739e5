#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

#include "bayescal/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bayescal");
  std::ostringstream out, err;
  const int code = bayescal::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("bayescal_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path / name) << content;
    return (path / name).string();
  }
};

const char* kMirror = "label,score\nH1,1\nH1,2\nH1,3\nH2,-3\nH2,-2\nH2,-1\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("llr reports both methods") {
  TempDir dir;
  const auto bg = dir.write("bg.csv", kMirror);
  const auto r = run_cli({"llr", "--background", bg, "--score", "2"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("log_lr_plugin").get<double>() == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(j.at("log_lr_bayes").get<double>() == doctest::Approx(3.8562625009049336).epsilon(1e-12));
  CHECK(j.at("log10_lr_bayes").get<double>() == doctest::Approx(3.8562625009049336 / std::log(10.0)));
  CHECK(j.at("prior").at("h1").at("beta") == 0.01);

  const auto only = run_cli({"llr", "--background", bg, "--score", "2", "--method", "plugin"});
  REQUIRE(only.code == 0);
  CHECK_FALSE(json::parse(only.out).contains("log_lr_bayes"));
}

TEST_CASE("llr accepts tar/non aliases") {
  TempDir dir;
  const auto bg = dir.write("bg.csv", "label,score\ntar,1\ntar,2\ntar,3\nnon,-3\nnon,-2\nnon,-1\n");
  const auto r = run_cli({"llr", "--background", bg, "--score", "2", "--method", "bayes"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("log_lr_bayes").get<double>() == doctest::Approx(3.8562625009049336).epsilon(1e-12));
}

TEST_CASE("llr error exit codes") {
  TempDir dir;
  const auto bad = dir.write("bad.csv", "label,score\nH1,abc\n");
  const auto r = run_cli({"llr", "--background", bad, "--score", "0"});
  CHECK(r.code == bayescal::cli::kParse);
  CHECK(r.err.find(":2:") != std::string::npos);

  const auto tiny = dir.write("tiny.csv", "label,score\nH1,1\nH2,-1\nH2,-2\n");
  CHECK(run_cli({"llr", "--background", tiny, "--score", "0", "--method", "plugin"}).code ==
        bayescal::cli::kValidation);
  // The Bayesian method is defined for any sample size.
  CHECK(run_cli({"llr", "--background", tiny, "--score", "0", "--method", "bayes"}).code == 0);
  CHECK(run_cli({"llr", "--background", (dir.path / "missing.csv").string(), "--score", "0"}).code ==
        bayescal::cli::kIo);
  CHECK(run_cli({"llr", "--score", "0"}).code == bayescal::cli::kParse);
  CHECK(run_cli({"llr", "--background", tiny, "--score", "x"}).code == bayescal::cli::kParse);
  const auto good = dir.write("good.csv", kMirror);
  CHECK(run_cli({"llr", "--background", good, "--score", "0", "--beta", "-1"}).code == bayescal::cli::kValidation);
}

TEST_CASE("decide follows costs and priors") {
  // LR of 10001 against 10000:1 costs at even prior odds: just clears the threshold.
  char llr[32];
  std::snprintf(llr, sizeof llr, "%.17g", std::log(10001.0));
  auto r = run_cli({"decide", "--log-lr", llr, "--pi1", "0.5", "--cost-false-convict", "10000",
                    "--cost-false-acquit", "1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("decision") == "convict");

  r = run_cli({"decide", "--log-lr", std::to_string(std::log(9999.0)), "--pi1", "0.5", "--cost-false-convict", "10000"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("decision") == "acquit");

  r = run_cli({"decide", "--log-lr", "0", "--pi1", "0.5"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("decision") == "acquit");  // ties acquit

  CHECK(run_cli({"decide", "--log-lr", "0", "--pi1", "1.5"}).code == bayescal::cli::kValidation);
  CHECK(run_cli({"decide", "--log-lr", "0", "--pi1", "0"}).code == bayescal::cli::kValidation);
  CHECK(run_cli({"decide", "--log-lr", "0", "--pi1", "0.5", "--cost-false-acquit", "-2"}).code ==
        bayescal::cli::kValidation);
  CHECK(run_cli({"decide", "--pi1", "0.5"}).code == bayescal::cli::kValidation);
}

TEST_CASE("decide from background data") {
  TempDir dir;
  const auto bg = dir.write("bg.csv", kMirror);
  const auto r = run_cli({"decide", "--background", bg, "--score", "2", "--pi1", "0.5"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("method") == "bayes");
  CHECK(j.at("posterior_log_odds").get<double>() == doctest::Approx(3.8562625009049336).epsilon(1e-12));
  CHECK(j.at("decision") == "convict");
}

TEST_CASE("simulate writes its outputs") {
  TempDir dir;
  const auto cfg = dir.write("small.json", R"({"experiment": {"trials": 4, "n_test_per_class": 200},
    "confidence": {"sizes": [[9, 27]], "trials": 4, "n_test_per_class": 100}})");
  const auto out = (dir.path / "run").string();
  const auto r = run_cli({"simulate", "--config", cfg, "--out", out});
  REQUIRE(r.code == 0);
  std::ifstream curve(fs::path(out) / "curve.csv");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(curve, line)) ++lines;
  CHECK(lines == 42);
  CHECK(fs::exists(fs::path(out) / "confidence.csv"));
  std::ifstream meta_in(fs::path(out) / "run_meta.json");
  const json meta = json::parse(meta_in);
  CHECK(meta.at("config").at("experiment").at("trials") == 4);

  const auto bad = dir.write("bad.json", R"({"experimnt": {}})");
  CHECK(run_cli({"simulate", "--config", bad, "--out", out}).code == bayescal::cli::kValidation);
  const auto broken = dir.write("broken.json", "{");
  CHECK(run_cli({"simulate", "--config", broken, "--out", out}).code == bayescal::cli::kParse);
  const auto blocker = dir.write("file_not_dir", "x");
  CHECK(run_cli({"simulate", "--config", cfg, "--out", blocker + "/sub"}).code == bayescal::cli::kIo);
}

TEST_CASE("lr-distribution output") {
  TempDir dir;
  const auto r = run_cli({"lr-distribution", "--score", "5", "--trials", "50", "--seed", "3"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  for (const char* key : {"mu", "sigma", "mu_stderr", "mean_bayes_log_lr", "plugin_log_lr_per_trial"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.at("plugin_log_lr_per_trial").size() == 50);
  const auto path = (dir.path / "lrd.json").string();
  CHECK(run_cli({"lr-distribution", "--score", "5", "--trials", "50", "--seed", "3", "--out", path}).code == 0);
  std::ifstream in(path);
  CHECK(json::parse(in) == j);
  CHECK(run_cli({"lr-distribution", "--score", "5", "--trials", "5", "--out", "/nonexistent/dir/x.json"}).code ==
        bayescal::cli::kIo);
}

TEST_CASE("verify runs a reduced suite") {
  TempDir dir;
  const auto report = (dir.path / "report.json").string();
  const auto r = run_cli({"verify", "--posteriors", "2", "--route-cases", "2", "--decomposition-samples", "20",
                          "--report", report});
  CHECK(r.code == 0);
  std::ifstream in(report);
  const json j = json::parse(in);
  CHECK(j.contains("checks"));
  CHECK(run_cli({"verify", "--grid", "100"}).code == bayescal::cli::kValidation);
  CHECK(run_cli({"verify", "--report", "/nonexistent/dir/r.json"}).code == bayescal::cli::kIo);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == bayescal::cli::kParse);
  CHECK(run_cli({"frobnicate"}).code == bayescal::cli::kParse);
  CHECK(run_cli({"--help"}).code == 0);
}

}  // TEST_SUITE
