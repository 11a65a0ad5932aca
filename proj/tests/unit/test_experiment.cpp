#include <doctest.h>

#include "fiberlab/experiment.hpp"

using namespace fiberlab;
using nlohmann::json;

TEST_SUITE_BEGIN("experiment");

TEST_CASE("config normalization: defaults, unknown keys, bad types, guards") {
  const json norm = normalize_config(json::object());
  CHECK(norm.at("paths") == 4000);
  CHECK(norm.at("grid").at("dt") == 1e-3);
  CHECK(norm.at("test") == "all");

  CHECK_THROWS_WITH_AS(normalize_config(json{{"grid", {{"dtt", 1e-3}}}}),
                       doctest::Contains("config.grid.dtt"), ConfigError);
  CHECK_THROWS_AS(normalize_config(json{{"paths", "many"}}), ConfigError);
  CHECK_THROWS_AS(normalize_config(json{{"test", "everything"}}), ConfigError);
  CHECK_THROWS_AS(normalize_config(json{{"paths", 10}}), ConfigError);
}

TEST_CASE("tiny ensembles are refused through the runner") {
  const ExperimentResult r = run_experiment(json{{"paths", 10}, {"test", "martingale"}});
  CHECK(r.exit_code == kConfigError);
  CHECK(r.error.find("paths") != std::string::npos);
}

TEST_CASE("scenario catalog lists the four setups with their content") {
  const auto catalog = scenario_catalog();
  REQUIRE(catalog.size() == 4);
  bool has_hopf = false, has_sphere_frames = false;
  for (const auto& e : catalog) {
    if (e.id == "s2-hopf") {
      has_hopf = true;
      CHECK(e.summary.find("nonabelian") != std::string::npos);
      CHECK(e.summary.find("identity table") != std::string::npos);
    }
    if (e.id == "s3-frame-sphere") {
      has_sphere_frames = true;
      CHECK(e.summary.find("canonical-lift") != std::string::npos);
      CHECK(e.summary.find("horizontal-lift") != std::string::npos);
    }
  }
  CHECK(has_hopf);
  CHECK(has_sphere_frames);
  CHECK_THROWS_AS(build_scenario("s9-unknown", {}), ConfigError);
  CHECK_THROWS_AS(build_scenario("s1-abelian-kk", {{"curvature", 3.0}}), ConfigError);
}

TEST_CASE("static identity run passes and reproduces byte-identically") {
  const json cfg{{"scenario", {{"id", "s1-abelian-kk"}}},
                 {"test", "static-identities"},
                 {"samples", 60}};
  ExperimentResult a = run_experiment(cfg);
  CHECK(a.exit_code == kPass);
  CHECK(a.report.at("pass") == true);
  CHECK(a.report.at("schema") == "report-v1");
  ExperimentResult b = run_experiment(cfg);
  a.report.erase("generated_at");
  b.report.erase("generated_at");
  CHECK(a.report.dump() == b.report.dump());
}

TEST_CASE("martingale run: pass and drift-injected rejection exit codes") {
  json cfg{{"scenario", {{"id", "s1-abelian-kk"}}},
           {"test", "martingale"},
           {"paths", 128},
           {"grid", {{"horizon", 0.3}, {"dt", 2e-3}}},
           {"drivers", json::array({"horizontal-brownian"})}};
  const ExperimentResult good = run_experiment(cfg);
  CHECK(good.exit_code == kPass);
  CHECK(good.bins_csv.rfind("suite,check,bin", 0) == 0);

  cfg["drivers"].push_back("horizontal-drift:0.0,1.5");
  const ExperimentResult bad = run_experiment(cfg);
  CHECK(bad.exit_code == kRejected);
  CHECK(bad.report.at("pass") == false);
}

TEST_CASE("schema document covers the config surface") {
  const json schema = config_schema();
  CHECK(schema.at("properties").contains("scenario"));
  CHECK(schema.at("properties").contains("grid"));
  CHECK(schema.at("properties").contains("tolerances"));
  CHECK(schema.at("additionalProperties") == false);
}

TEST_SUITE_END();
