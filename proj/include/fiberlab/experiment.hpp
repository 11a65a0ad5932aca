#pragma once

#include "fiberlab/analysis/harmonic.hpp"
#include "fiberlab/analysis/static_checks.hpp"

namespace fiberlab {

/// Exit-code contract of the runner.
enum ExitCode : int {
  kPass = 0,
  kRejected = 2,
  kConfigError = 3,
  kNumericalFailure = 4,
};

/// Validates a config document against the published schema (unknown keys
/// rejected, types checked) and fills in the defaults.
nlohmann::json normalize_config(const nlohmann::json& config);

/// JSON Schema of the config document.
nlohmann::json config_schema();

struct ExperimentResult {
  int exit_code = kPass;
  nlohmann::ordered_json report;  // schema "report-v1"
  std::string bins_csv;           // per-bin drift statistics
  std::string paths_csv;          // optional ensemble dump
  std::string error;              // set for config/numerical failures
};

/// Runs the selected suites for the configured scenario. Deterministic for a
/// fixed config (timestamps live in their own field).
ExperimentResult run_experiment(const nlohmann::json& config);

/// Writes report.json, bins.csv and (optionally) paths.csv into out_dir.
void write_result_files(const ExperimentResult& result, const std::string& out_dir);

}  // namespace fiberlab
