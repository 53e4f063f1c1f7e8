#include <doctest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "reprank/config.hpp"
#include "reprank/errors.hpp"

using namespace reprank;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& content) {
  static int counter = 0;
  fs::path p = fs::temp_directory_path() /
               ("reprank_cfg_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + ".conf");
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("defaults carry the published parameter values") {
  AppConfig cfg;
  CHECK(cfg.summary.rank.alpha == 0.70);
  CHECK(cfg.summary.rank.beta == 0.05);
  CHECK(cfg.summary.rank.gamma == 0.25);
  CHECK(cfg.summary.thresholds.ss == 0.45);
  CHECK(cfg.summary.thresholds.sw == 0.30);
  CHECK(cfg.summary.thresholds.ww == 0.20);
  CHECK(cfg.summary.tau == 0.25);
  CHECK(cfg.summary.sampler.kappa == 0.0001);
  CHECK(cfg.summary.length_limit == 200);
  CHECK(cfg.summary.keyword_count == 10);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("key=value application reaches every subsystem") {
  AppConfig cfg;
  cfg.apply_key_value("alpha", "0.6");
  cfg.apply_key_value("beta", "0.1");
  cfg.apply_key_value("gamma", "0.3");
  cfg.apply_key_value("epsilon-ss", "0.5");
  cfg.apply_key_value("tau", "0.5");
  cfg.apply_key_value("kappa", "0.001");
  cfg.apply_key_value("limit", "100");
  cfg.apply_key_value("keywords", "7");
  cfg.apply_key_value("solver", "direct");
  cfg.apply_key_value("walks", "1234");
  cfg.apply_key_value("seed", "55");
  cfg.apply_key_value("repr", "attention");
  cfg.apply_key_value("diversity", "plain");
  cfg.apply_key_value("epochs", "9");
  cfg.apply_key_value("lr", "0.05");

  CHECK(cfg.summary.rank.alpha == 0.6);
  CHECK(cfg.summary.rank.gamma == 0.3);
  CHECK(cfg.summary.thresholds.ss == 0.5);
  CHECK(cfg.summary.tau == 0.5);
  CHECK(cfg.summary.sampler.kappa == 0.001);
  CHECK(cfg.summary.length_limit == 100);
  CHECK(cfg.summary.keyword_count == 7);
  CHECK(cfg.summary.rank.solver == SolverKind::Direct);
  CHECK(cfg.summary.sampler.walks_per_batch == 1234);
  CHECK(cfg.summary.sampler.seed == 55);
  CHECK(cfg.trainer.seed == 55);
  CHECK(cfg.summary.repr == ReprMode::Attention);
  CHECK(cfg.summary.diversity == DiversityMode::Plain);
  CHECK(cfg.trainer.epochs == 9);
  CHECK(cfg.trainer.learning_rate == 0.05);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("unknown keys and malformed values are rejected") {
  AppConfig cfg;
  CHECK_THROWS_AS(cfg.apply_key_value("alphabet", "1"), ConfigError);
  CHECK_THROWS_AS(cfg.apply_key_value("alpha", "soup"), ConfigError);
  CHECK_THROWS_AS(cfg.apply_key_value("solver", "magic"), ConfigError);
  CHECK_THROWS_AS(cfg.apply_key_value("repr", "magic"), ConfigError);
  CHECK_THROWS_AS(cfg.apply_key_value("diversity", "magic"), ConfigError);
}

TEST_CASE("validation rejects weights off the simplex") {
  AppConfig cfg;
  cfg.apply_key_value("alpha", "0.9");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("config files allow comments and blank lines") {
  fs::path p = write_temp(
      "# solver settings\n"
      "alpha = 0.5\n"
      "beta=0.25\n"
      "gamma = 0.25\n"
      "\n"
      "limit = 42\n");
  AppConfig cfg;
  cfg.load_file(p);
  CHECK(cfg.summary.rank.alpha == 0.5);
  CHECK(cfg.summary.rank.beta == 0.25);
  CHECK(cfg.summary.length_limit == 42);
  CHECK_NOTHROW(cfg.validate());
  fs::remove(p);
}

TEST_CASE("missing config file is an error") {
  AppConfig cfg;
  CHECK_THROWS_AS(cfg.load_file("/nonexistent/reprank.conf"), ConfigError);
}

TEST_CASE("the environment variable is honored when set") {
  fs::path p = write_temp("limit = 77\n");
  ::setenv("REPRANK_CONFIG", p.c_str(), 1);
  AppConfig cfg = AppConfig::from_environment();
  CHECK(cfg.summary.length_limit == 77);
  ::unsetenv("REPRANK_CONFIG");
  CHECK(AppConfig::from_environment().summary.length_limit == 200);
  fs::remove(p);
}

TEST_CASE("mode parsers accept the documented spellings") {
  CHECK(parse_repr_mode("average") == ReprMode::Average);
  CHECK(parse_repr_mode("attention") == ReprMode::Attention);
  CHECK(parse_diversity_mode("absorb") == DiversityMode::Absorb);
  CHECK(parse_diversity_mode("plain") == DiversityMode::Plain);
  CHECK(parse_solver_kind("power") == SolverKind::Power);
  CHECK(parse_solver_kind("direct") == SolverKind::Direct);
}
