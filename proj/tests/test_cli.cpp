#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fiiss/cli.hpp"
#include "fiiss/errors.hpp"
#include "fiiss/io.hpp"

#include "json.hpp"

using namespace fiiss;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fiiss_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("simulate writes plot-ready CSV with embedded metadata") {
  const fs::path dir = fresh_dir("simulate");
  RunConfig cfg;
  cfg.command = Command::Simulate;
  cfg.alpha = 0.75;
  cfg.beta = 0.5;
  cfg.u_max = 0.5;
  cfg.u_step = 0.05;
  cfg.t_step = 1e-2;
  cfg.seed = 7;
  cfg.output = dir.string();
  CHECK(run_command(cfg) == kExitOk);

  const std::string w_csv = slurp(dir / "simulate_w.csv");
  CHECK(w_csv.find("# fiiss") == 0);
  CHECK(w_csv.find("# seed=7\n") != std::string::npos);
  CHECK(w_csv.find("# alpha=0.75\n") != std::string::npos);
  CHECK(w_csv.find("u,value\n") != std::string::npos);
  CHECK(w_csv.find('\r') == std::string::npos);
  CHECK(fs::exists(dir / "simulate_y.csv"));
}

TEST_CASE("figure1 emits six CSVs and reruns bit-identically") {
  const fs::path dir_a = fresh_dir("fig_a");
  const fs::path dir_b = fresh_dir("fig_b");
  RunConfig cfg;
  cfg.command = Command::Figure1;
  cfg.seed = 42;
  cfg.u_step = 1.0 / 64.0;
  cfg.t_step = 1e-3;

  cfg.output = dir_a.string();
  CHECK(run_command(cfg) == kExitOk);
  cfg.output = dir_b.string();
  CHECK(run_command(cfg) == kExitOk);

  const char* names[] = {"figure1_beta_0.5_w.csv",  "figure1_beta_0.5_y.csv",
                         "figure1_beta_-0.5_w.csv", "figure1_beta_-0.5_y.csv",
                         "figure1_beta_-1.5_w.csv", "figure1_beta_-1.5_y.csv"};
  for (const char* name : names) {
    CAPTURE(name);
    REQUIRE(fs::exists(dir_a / name));
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
  }
}

TEST_CASE("verify writes a report and reflects the outcome in its exit code") {
  const fs::path dir = fresh_dir("verify");
  RunConfig cfg;
  cfg.command = Command::Verify;
  cfg.alpha = 0.5;
  cfg.beta = 0.0;
  cfg.n = 4000;
  cfg.t_step = 2e-3;
  cfg.seed = 11;
  cfg.output = dir.string();
  const int code = run_command(cfg);
  CHECK(code == kExitOk);

  const auto doc = nlohmann::json::parse(slurp(dir / "verify_report.json"));
  CHECK(doc["version"] == kVersion);
  CHECK(doc["seed"] == 11);
  CHECK(doc["all_pass"] == true);
  bool saw_ml_moment = false;
  for (const auto& entry : doc["entries"]) {
    if (entry["name"].get<std::string>().find("mittag_leffler_moment") != std::string::npos) {
      saw_ml_moment = true;
      CHECK(entry["pass"] == true);
    }
  }
  CHECK(saw_ml_moment);
  // stable key order in the serialized report
  const std::string text = slurp(dir / "verify_report.json");
  CHECK(text.find("\"version\"") < text.find("\"seed\""));
  CHECK(text.find("\"seed\"") < text.find("\"entries\""));
}

TEST_CASE("invalid configurations are rejected before any computation") {
  RunConfig cfg;
  cfg.command = Command::Verify;
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(run_command(cfg), std::domain_error);

  RunConfig tail_cfg;
  tail_cfg.command = Command::Tail;
  tail_cfg.alpha = 0.5;
  tail_cfg.beta = -0.8;  // divergent regime has no tail law
  CHECK_THROWS_AS(run_command(tail_cfg), std::domain_error);

  RunConfig lil_cfg;
  lil_cfg.command = Command::Lil;
  lil_cfg.alpha = 0.75;
  lil_cfg.beta = 0.5;
  lil_cfg.u_lo = 1.0;  // log log u undefined
  CHECK_THROWS_AS(run_command(lil_cfg), std::invalid_argument);
}

TEST_CASE("converge exports samples and reports failures with exit code 1") {
  const fs::path dir = fresh_dir("converge");
  RunConfig cfg;
  cfg.command = Command::Converge;
  cfg.alpha = 0.75;
  cfg.beta = -0.5;
  cfg.n = 500;
  cfg.t_step = 2e-3;
  cfg.t_ladder = {1e4, 1e2};  // deliberately reversed: KS must increase
  cfg.seed = 21;
  cfg.export_samples = true;
  cfg.output = dir.string();
  CHECK(run_command(cfg) == kExitCheckFailed);
  // report is still written, and the exported samples are single-column CSV
  const auto doc = nlohmann::json::parse(slurp(dir / "converge_report.json"));
  CHECK(doc["pass"] == false);
  CHECK(doc["ladder"].size() == 2);
  const std::string ref_csv = slurp(dir / "converge_reference.csv");
  CHECK(ref_csv.find("value\n") != std::string::npos);
  CHECK(fs::exists(dir / "converge_marginal_t100.csv"));
}

TEST_CASE("runaway path simulations hit the resource cap") {
  RunConfig cfg;
  cfg.command = Command::Simulate;
  cfg.alpha = 0.5;
  cfg.u_max = 1e18;
  cfg.t_step = 1e-3;
  CHECK_THROWS_AS(run_command(cfg), resource_error);
}

TEST_CASE("diverge distinguishes the regimes at pilot scale") {
  const fs::path dir = fresh_dir("diverge");
  RunConfig cfg;
  cfg.command = Command::Diverge;
  cfg.alpha = 0.75;
  cfg.beta = -1.5;
  cfg.n = 20;
  cfg.t_step = 2e-3;
  cfg.refinement_ladder = {256, 512, 1024};
  cfg.seed = 3;
  cfg.output = dir.string();
  CHECK(run_command(cfg) == kExitOk);
  const auto doc = nlohmann::json::parse(slurp(dir / "diverge_report.json"));
  CHECK(doc["criterion"] == "strictly_increasing");
  CHECK(doc["pass"] == true);
  double prev = 0.0;
  for (const auto& rung : doc["ladder"]) {
    const double median = rung["median_max"].get<double>();
    CHECK(median > prev);
    prev = median;
  }
}
