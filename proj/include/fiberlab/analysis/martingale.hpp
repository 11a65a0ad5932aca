#pragma once

#include "fiberlab/analysis/drift.hpp"
#include "fiberlab/stochastic/exponential.hpp"
#include "fiberlab/stochastic/sde.hpp"

namespace fiberlab {

struct MartingaleVerdict {
  std::vector<DriftReport> reports;
  bool consistent() const {
    for (const auto& r : reports)
      if (!r.consistent) return false;
    return !reports.empty();
  }
};

/// The two processes of the bundle-martingale characterization for one path:
///   Z1 = int omega dY (Stratonovich) - 1/2 int (nabla^P omega)(dY, dY)
///   Z2_alpha = int alpha d^{nabla^M} (pi o Y) + 1/2 int alpha(pi_*((2A^S + T^S)(dY, dY)))
/// with alpha running over the base chart coordinate differentials.
struct CharacterizationProcesses {
  std::vector<std::vector<double>> z1;  // [component][time]
  std::vector<std::vector<double>> z2;  // [alpha][time]
};
CharacterizationProcesses characterization_processes(const Scenario& sc, const FundamentalTensors& ft,
                                                     const AffineConnection& nablaM, const PathSample& Y);

/// Drift-tests all Z1 components and all Z2 forms over the ensemble.
MartingaleVerdict martingale_verdict(const Scenario& sc, const FundamentalTensors& ft,
                                     const AffineConnection& nablaM, const PathEnsemble& ens,
                                     const DriftConfig& config);

/// Simplified invariant-metric form: int omega dY alone, and
/// int alpha d^{nabla}(pi o Y) - 1/2 int alpha(pi_*(A(dY, dY))).
MartingaleVerdict kk_simplified_verdict(const Scenario& sc, const FundamentalTensors& ft,
                                        const AffineConnection& nablaM, const PathEnsemble& ens,
                                        const DriftConfig& config);

/// Direct test: Ito integrals of every total-space coordinate differential.
MartingaleVerdict direct_total_space_verdict(const Scenario& sc, const AffineConnection& nablaP,
                                             const PathEnsemble& ens, const DriftConfig& config);

/// Base-manifold martingale test of the projected ensemble.
MartingaleVerdict base_martingale_verdict(const Scenario& sc, const AffineConnection& nablaM,
                                          const PathEnsemble& ens, const DriftConfig& config);

/// G-martingale test of V = stochastic exponential of int omega dY, in
/// cumulative exponential coordinates.
MartingaleVerdict fiber_martingale_verdict(const Scenario& sc, const PathEnsemble& ens,
                                           const DriftConfig& config);

}  // namespace fiberlab
