#pragma once

#include "fiberlab/bundle/scenarios.hpp"
#include "fiberlab/stochastic/integrals.hpp"

namespace fiberlab {

/// Group-valued path V_0 = e, V_{k+1} = V_k exp(dZ_k), where dZ_k is the
/// Stratonovich increment of int omega dY over step k. Right increments make
/// Y = Ytilde . V reconstruct under the right action.
std::vector<Eigen::MatrixXcd> stochastic_exponential(const Scenario& sc, const PathSample& Y);

struct SplitResult {
  PathSample horizontal;                  // Ytilde
  std::vector<Eigen::MatrixXcd> fiber;    // V
  double reconstruction_error = 0.0;      // max_k |Y_k - Ytilde_k . V_k| in coordinates
  double horizontality_defect = 0.0;      // sum_k |omega-increment along Ytilde|
  /// Cumulative right-increments of V in exponential coordinates,
  /// log(V_k^{-1} V_{k+1}) summed; the G-martingale test runs on this.
  std::vector<Eigen::VectorXd> fiber_log;
};

SplitResult arnaudon_paycha_split(const Scenario& sc, const PathSample& Y);

}  // namespace fiberlab
