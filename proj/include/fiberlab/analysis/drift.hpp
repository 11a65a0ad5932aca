#pragma once

#include <string>
#include <vector>

#include "fiberlab/core/errors.hpp"

namespace fiberlab {

struct DriftConfig {
  double sigma_multiplier = 4.0;  // ~4 sigma per comparison, Bonferroni-safe over 20 bins
  double c_disc = 1.0;            // discretization budget: threshold += c_disc * dt
  int bins = 20;
  int min_paths = 100;
};

struct BinStat {
  double t0 = 0.0, t1 = 0.0;
  double mean = 0.0, se = 0.0;
  bool pass = true;
};

/// Binned increment statistics of a real process ensemble and the verdict:
/// consistent iff |global mean| <= sigma_mult * SE + c_disc * dt and every
/// bin satisfies the same bound with its own SE.
struct DriftReport {
  std::string name;
  int paths = 0;
  double dt = 0.0;
  double global_mean = 0.0, global_se = 0.0, global_threshold = 0.0;
  std::vector<BinStat> bins;
  bool consistent = false;
  DriftConfig config;
};

/// Z: one real process per path, each with K+1 entries, Z_0 = 0; dt the step.
DriftReport drift_test(const std::vector<std::vector<double>>& Z, double dt, const DriftConfig& config,
                       const std::string& name);

}  // namespace fiberlab
