#include "fiberlab/experiment.hpp"

#include "fiberlab/geometry/builtins.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fiberlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json default_config() {
  return json{
      {"scenario", {{"id", "s1-abelian-kk"}, {"params", json::object()}}},
      {"grid", {{"horizon", 1.0}, {"dt", 1e-3}}},
      {"paths", 4000},
      {"seed", 42},
      {"test", "all"},
      {"drivers", json::array({"horizontal-brownian"})},
      {"samples", 1000},
      {"threads", 0},
      {"output_dir", ""},
      {"emit_paths_csv", false},
      {"tolerances",
       {{"sigma_multiplier", 4.0},
        {"c_disc", 1.0},
        {"static_identity", 1e-7},
        {"sff", 1e-6},
        {"projectability", 1e-8},
        {"invariance", 1e-8},
        {"harmonic", 1e-5},
        {"omega_square", 1e-6}}},
  };
}

void check_same_shape(const json& defaults, const json& given, const std::string& path) {
  if (!given.is_object()) throw ConfigError("config" + path + ": expected an object");
  for (auto it = given.begin(); it != given.end(); ++it) {
    const std::string here = path + "." + it.key();
    if (!defaults.contains(it.key())) throw ConfigError("config" + here + ": unknown key");
    const json& dv = defaults.at(it.key());
    const json& gv = it.value();
    if (dv.is_object() && it.key() != "params") {
      check_same_shape(dv, gv, here);
    } else if (dv.is_number() && !gv.is_number()) {
      throw ConfigError("config" + here + ": expected a number");
    } else if (dv.is_string() && !gv.is_string()) {
      throw ConfigError("config" + here + ": expected a string");
    } else if (dv.is_array() && !gv.is_array()) {
      throw ConfigError("config" + here + ": expected an array");
    } else if (dv.is_boolean() && !gv.is_boolean()) {
      throw ConfigError("config" + here + ": expected a boolean");
    }
  }
}

void deep_merge(json& base, const json& overrides) {
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    if (it.value().is_object() && base.contains(it.key()) && base[it.key()].is_object() &&
        it.key() != "params")
      deep_merge(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

ordered_json check_json(const Check& c) {
  return ordered_json{{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}};
}

ordered_json drift_json(const DriftReport& r) {
  ordered_json bins = ordered_json::array();
  for (const BinStat& b : r.bins)
    bins.push_back(ordered_json{
        {"t0", b.t0}, {"t1", b.t1}, {"mean", b.mean}, {"se", b.se}, {"pass", b.pass}});
  return ordered_json{{"name", r.name},
                      {"paths", r.paths},
                      {"dt", r.dt},
                      {"global_mean", r.global_mean},
                      {"global_se", r.global_se},
                      {"threshold", r.global_threshold},
                      {"consistent", r.consistent},
                      {"bins", bins}};
}

struct SuiteRun {
  std::string name;
  bool pass = true;
  ordered_json checks = ordered_json::array();
  std::vector<DriftReport> drift_reports;

  void add(const Check& c) {
    checks.push_back(check_json(c));
    pass = pass && c.pass;
  }
  void add(const DriftReport& r) {
    checks.push_back(drift_json(r));
    pass = pass && r.consistent;
    drift_reports.push_back(r);
  }
  void add_rows(const ResidualReport& rep, double threshold, const std::string& prefix) {
    for (const ResidualRow& row : rep.rows)
      add(Check{prefix + row.name, row.residual, threshold, row.residual < threshold});
  }
};

SuiteRun run_static_suite(const Scenario& sc, const json& cfg) {
  SuiteRun suite;
  suite.name = "static-identities";
  const json& tol = cfg.at("tolerances");
  const int nsamples = cfg.at("samples").get<int>();
  RngStream rng(cfg.at("seed").get<std::uint64_t>(), 0xA11CE);
  std::vector<ChartPoint> samples;
  samples.reserve(static_cast<std::size_t>(nsamples));
  for (int i = 0; i < nsamples; ++i) samples.push_back(sc.sample_total(rng));
  const double tol_static = tol.at("static_identity").get<double>();

  suite.add_rows(lemma_identity_suite(*sc.tensors, samples, rng), tol_static, "lemma: ");
  const double sff = sff_identity_residual(*sc.tensors, *sc.nablaM, samples, rng);
  suite.add(Check{"sff identity", sff, tol.at("sff").get<double>(), sff < tol.at("sff").get<double>()});

  const int nsub = std::min<int>(nsamples, 40);
  std::vector<ChartPoint> sub(samples.begin(), samples.begin() + nsub);
  const auto proj = check_projectable(*sc.tensors, sub, rng, sc.section,
                                      tol.at("projectability").get<double>());
  suite.add(Check{"projectability fiber spread", proj.fiber_spread,
                  tol.at("projectability").get<double>(), proj.projectable});
  const auto inv =
      check_g_invariance(*sc.bundle, sc.tensors->connection(), sub, rng, tol.at("invariance").get<double>());
  suite.add(Check{"G-invariance", inv.max_residual, tol.at("invariance").get<double>(), inv.invariant});

  if (sc.kaluza_klein) {
    suite.add_rows(kk_table_checks(sc, *sc.tensors, samples, rng), tol_static, "kk-table: ");
  }
  if (sc.connections.count("horizontal") > 0) {
    RngStream rng2(cfg.at("seed").get<std::uint64_t>(), 0xF4A3E);
    suite.add_rows(frame_bundle_checks(sc, *sc.tensors_for("horizontal"), true, samples, rng2),
                   tol.at("omega_square").get<double>(), "frame(horizontal): ");
    suite.add_rows(frame_bundle_checks(sc, *sc.tensors_for("canonical"), false, samples, rng2),
                   tol_static, "frame(canonical): ");
  }
  return suite;
}

SuiteRun run_martingale_suite(const std::shared_ptr<Scenario>& sc, const json& cfg) {
  SuiteRun suite;
  suite.name = "martingale";
  const json& tol = cfg.at("tolerances");
  DriftConfig dc;
  dc.sigma_multiplier = tol.at("sigma_multiplier").get<double>();
  dc.c_disc = tol.at("c_disc").get<double>();
  const TimeGrid grid =
      TimeGrid::from_horizon(cfg.at("grid").at("horizon").get<double>(), cfg.at("grid").at("dt").get<double>());
  std::vector<DriverSpec> specs;
  bool all_brownian = true;
  for (const auto& d : cfg.at("drivers")) {
    specs.push_back(parse_driver_spec(d.get<std::string>(), *sc));
    if (specs.back().name.find("drift") != std::string::npos) all_brownian = false;
  }
  const std::vector<Driver> drivers = make_drivers(sc, specs);
  const PathEnsemble ens = simulate_ensemble(
      *sc->total, drivers, [&sc](int) { return sc->default_start; }, grid, cfg.at("paths").get<int>(),
      cfg.at("seed").get<std::uint64_t>(), cfg.at("threads").get<int>());

  MartingaleVerdict main = martingale_verdict(*sc, *sc->tensors, *sc->nablaM, ens, dc);
  for (const auto& r : main.reports) suite.add(r);
  if (sc->kaluza_klein) {
    MartingaleVerdict simple = kk_simplified_verdict(*sc, *sc->tensors, *sc->nablaM, ens, dc);
    for (const auto& r : simple.reports) suite.add(r);
    if (all_brownian) {
      MartingaleVerdict fiber = fiber_martingale_verdict(*sc, ens, dc);
      for (const auto& r : fiber.reports) suite.add(r);
    }
  }
  return suite;
}

SuiteRun run_harmonic_suite(const std::shared_ptr<Scenario>& sc, const json& cfg) {
  SuiteRun suite;
  suite.name = "harmonic";
  const double tol = cfg.at("tolerances").at("harmonic").get<double>();
  auto interval = make_interval(-0.05, 0.9);
  auto lc_src = std::make_shared<LeviCivitaConnection>(interval.get());
  const Eigen::VectorXd X0 = Eigen::VectorXd::Unit(sc->base->dim(), 0);
  const Eigen::VectorXd vel = sc->form->horizontal_lift(sc->default_start, X0);
  GeodesicCurveMap geo(interval.get(), sc->tensors->connection(), sc->default_start, vel, -0.05, 0.9);
  std::vector<ChartPoint> grid;
  for (int i = 0; i < 9; ++i) {
    Eigen::VectorXd t(1);
    t << 0.02 + 0.08 * i;
    grid.push_back({0, t});
  }
  const HarmonicReport rep =
      harmonic_conditions(*sc, *sc->tensors, geo, interval->metric(), *lc_src, *sc->nablaM, grid);
  suite.add(Check{"geodesic r1 (codifferential vs trace)", rep.r1_max(), tol, rep.r1_max() < tol});
  suite.add(Check{"geodesic r2 (tension vs correction)", rep.r2_max(), tol, rep.r2_max() < tol});
  suite.add(Check{"grid holes", static_cast<double>(rep.holes), 0.5, rep.holes == 0});
  return suite;
}

std::string bins_csv_of(const std::vector<SuiteRun>& suites) {
  std::ostringstream os;
  os << "suite,check,bin,t0,t1,mean,se,pass\n";
  for (const SuiteRun& s : suites)
    for (const DriftReport& r : s.drift_reports)
      for (std::size_t b = 0; b < r.bins.size(); ++b) {
        const BinStat& bin = r.bins[b];
        os << s.name << ',' << r.name << ',' << b << ',' << bin.t0 << ',' << bin.t1 << ',' << bin.mean
           << ',' << bin.se << ',' << (bin.pass ? 1 : 0) << "\n";
      }
  return os.str();
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

json config_schema() {
  return json{
      {"$schema", "http://json-schema.org/draft-07/schema#"},
      {"title", "fiberlab experiment config"},
      {"type", "object"},
      {"additionalProperties", false},
      {"properties",
       {
           {"scenario",
            {{"type", "object"},
             {"additionalProperties", false},
             {"properties",
              {{"id",
                {{"type", "string"},
                 {"enum", {"s1-abelian-kk", "s2-hopf", "s3-frame-flat", "s3-frame-sphere"}}}},
               {"params", {{"type", "object"}}}}}}},
           {"grid",
            {{"type", "object"},
             {"additionalProperties", false},
             {"properties",
              {{"horizon", {{"type", "number"}, {"exclusiveMinimum", 0}}},
               {"dt", {{"type", "number"}, {"exclusiveMinimum", 0}}}}}}},
           {"paths", {{"type", "integer"}, {"minimum", 100}}},
           {"seed", {{"type", "integer"}, {"minimum", 0}}},
           {"test", {{"type", "string"}, {"enum", {"martingale", "harmonic", "static-identities", "all"}}}},
           {"drivers", {{"type", "array"}, {"items", {{"type", "string"}}}}},
           {"samples", {{"type", "integer"}, {"minimum", 1}}},
           {"threads", {{"type", "integer"}, {"minimum", 0}}},
           {"output_dir", {{"type", "string"}}},
           {"emit_paths_csv", {{"type", "boolean"}}},
           {"tolerances", {{"type", "object"}}},
       }},
  };
}

json normalize_config(const json& config) {
  json merged = default_config();
  check_same_shape(merged, config, "");
  deep_merge(merged, config);
  const std::string test = merged.at("test").get<std::string>();
  if (test != "martingale" && test != "harmonic" && test != "static-identities" && test != "all")
    throw ConfigError("config.test: must be one of martingale|harmonic|static-identities|all");
  if (merged.at("paths").get<int>() < 100)
    throw ConfigError("config.paths: at least 100 paths are required for drift statistics");
  if (merged.at("grid").at("dt").get<double>() <= 0.0) throw ConfigError("config.grid.dt: must be positive");
  if (merged.at("grid").at("horizon").get<double>() <= 0.0)
    throw ConfigError("config.grid.horizon: must be positive");
  return merged;
}

ExperimentResult run_experiment(const json& config) {
  ExperimentResult result;
  json cfg;
  try {
    cfg = normalize_config(config);
  } catch (const ConfigError& e) {
    result.exit_code = kConfigError;
    result.error = e.what();
    return result;
  }
  try {
    auto sc = build_scenario(cfg.at("scenario").at("id").get<std::string>(),
                             cfg.at("scenario").at("params"));
    const std::string test = cfg.at("test").get<std::string>();
    std::vector<SuiteRun> suites;
    if (test == "static-identities" || test == "all") suites.push_back(run_static_suite(*sc, cfg));
    if (test == "martingale" || test == "all") suites.push_back(run_martingale_suite(sc, cfg));
    if (test == "harmonic" || test == "all") suites.push_back(run_harmonic_suite(sc, cfg));

    bool pass = true;
    ordered_json jsuites = ordered_json::array();
    for (const SuiteRun& s : suites) {
      pass = pass && s.pass;
      jsuites.push_back(ordered_json{{"name", s.name}, {"pass", s.pass}, {"checks", s.checks}});
    }
    result.report = ordered_json{{"schema", "report-v1"},
                                 {"generated_at", timestamp_now()},
                                 {"config", ordered_json(cfg)},
                                 {"scenario", ordered_json{{"id", sc->id},
                                                           {"params", ordered_json(sc->params)},
                                                           {"summary", sc->summary}}},
                                 {"suites", jsuites},
                                 {"pass", pass}};
    result.bins_csv = bins_csv_of(suites);
    if (cfg.at("emit_paths_csv").get<bool>() && (test == "martingale" || test == "all")) {
      // re-simulate the configured ensemble for the dump (cheap relative to tests)
      const TimeGrid grid = TimeGrid::from_horizon(cfg.at("grid").at("horizon").get<double>(),
                                                   cfg.at("grid").at("dt").get<double>());
      std::vector<DriverSpec> specs;
      for (const auto& d : cfg.at("drivers")) specs.push_back(parse_driver_spec(d.get<std::string>(), *sc));
      const PathEnsemble ens = simulate_ensemble(
          *sc->total, make_drivers(sc, specs), [&sc](int) { return sc->default_start; }, grid,
          cfg.at("paths").get<int>(), cfg.at("seed").get<std::uint64_t>(), cfg.at("threads").get<int>());
      std::ostringstream os;
      write_ensemble_csv(os, ens);
      result.paths_csv = os.str();
    }
    result.exit_code = pass ? kPass : kRejected;
  } catch (const ConfigError& e) {
    result.exit_code = kConfigError;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = kNumericalFailure;
    result.error = e.what();
  }
  return result;
}

void write_result_files(const ExperimentResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream f(fs::path(out_dir) / "report.json");
    f << result.report.dump(2) << "\n";
  }
  {
    std::ofstream f(fs::path(out_dir) / "bins.csv");
    f << result.bins_csv;
  }
  if (!result.paths_csv.empty()) {
    std::ofstream f(fs::path(out_dir) / "paths.csv");
    f << result.paths_csv;
  }
}

}  // namespace fiberlab
