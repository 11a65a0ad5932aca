#include "fiberlab/analysis/drift.hpp"

#include <cmath>

namespace fiberlab {

DriftReport drift_test(const std::vector<std::vector<double>>& Z, double dt, const DriftConfig& config,
                       const std::string& name) {
  const int N = static_cast<int>(Z.size());
  if (N < config.min_paths)
    throw ConfigError("drift_test: " + std::to_string(N) + " paths; need at least " +
                      std::to_string(config.min_paths) + " for a meaningful verdict");
  const int K = static_cast<int>(Z.front().size()) - 1;
  DriftReport rep;
  rep.name = name;
  rep.paths = N;
  rep.dt = dt;
  rep.config = config;

  auto mean_se = [N](const std::vector<double>& incr, double& mean, double& se) {
    double m = 0.0;
    for (double v : incr) m += v;
    m /= N;
    double var = 0.0;
    for (double v : incr) var += (v - m) * (v - m);
    var /= (N - 1);
    mean = m;
    se = std::sqrt(var / N);
  };

  std::vector<double> incr(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) incr[static_cast<std::size_t>(i)] = Z[static_cast<std::size_t>(i)].back() - Z[static_cast<std::size_t>(i)].front();
  mean_se(incr, rep.global_mean, rep.global_se);
  rep.global_threshold = config.sigma_multiplier * rep.global_se + config.c_disc * dt;
  bool ok = std::abs(rep.global_mean) <= rep.global_threshold;

  const int nb = std::min(config.bins, K);
  rep.bins.resize(static_cast<std::size_t>(nb));
  for (int b = 0; b < nb; ++b) {
    const int k0 = (K * b) / nb;
    const int k1 = (K * (b + 1)) / nb;
    for (int i = 0; i < N; ++i)
      incr[static_cast<std::size_t>(i)] = Z[static_cast<std::size_t>(i)][static_cast<std::size_t>(k1)] -
                                          Z[static_cast<std::size_t>(i)][static_cast<std::size_t>(k0)];
    BinStat& bin = rep.bins[static_cast<std::size_t>(b)];
    bin.t0 = k0 * dt;
    bin.t1 = k1 * dt;
    mean_se(incr, bin.mean, bin.se);
    bin.pass = std::abs(bin.mean) <= config.sigma_multiplier * bin.se + config.c_disc * dt;
    ok = ok && bin.pass;
  }
  rep.consistent = ok;
  return rep;
}

}  // namespace fiberlab
