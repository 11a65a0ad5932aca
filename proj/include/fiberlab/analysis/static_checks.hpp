#pragma once

#include "fiberlab/bundle/scenarios.hpp"

namespace fiberlab {

/// The invariant-metric table: residuals of
///   nabla omega(B*, X^h) = 0,  nabla omega(X^h, B*) = 0,
///   nabla omega(B*, C*) = -1/2 [B, C],
///   nabla omega(X^h, Y^h) = -omega(A_{X^h} Y^h),
/// plus T = 0, A_{X^h} X^h = 0 and the vanishing symmetric part.
ResidualReport kk_table_checks(const Scenario& sc, const FundamentalTensors& ft,
                               const std::vector<ChartPoint>& samples, RngStream& rng);

/// Frame-bundle checks for one lift connection: T = 0, pi_* A = 0 and, for
/// the horizontal lift, sym(nabla omega) = -(omega . omega) with the
/// symmetrized matrix product.
ResidualReport frame_bundle_checks(const Scenario& sc, const FundamentalTensors& ft,
                                   bool check_omega_square, const std::vector<ChartPoint>& samples,
                                   RngStream& rng);

}  // namespace fiberlab
