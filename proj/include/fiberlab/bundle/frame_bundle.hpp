#pragma once

#include "fiberlab/bundle/tensors.hpp"

namespace fiberlab {

enum class FrameBase { Flat, Sphere };

/// Linear-frame bundle over a 2-dimensional base with structure group GL(2).
/// Chart coordinates are (x, p00, p01, p10, p11) with frame vectors as the
/// columns of p in the coordinate basis of the active base chart.
struct FrameBundleParts {
  std::shared_ptr<ChartedManifold> total;
  std::shared_ptr<PrincipalBundle> bundle;
  std::shared_ptr<MatrixFieldOnCharts> omega;
  std::shared_ptr<ConnectionForm> form;
  /// Lift connections determined by their action on fundamental and
  /// horizontally lifted fields; the canonical one adds the curvature
  /// correction term and stays torsion-free, the horizontal one picks up
  /// torsion over a curved base.
  std::shared_ptr<AffineConnection> horizontal;
  std::shared_ptr<AffineConnection> canonical;
};

FrameBundleParts make_frame_bundle(std::shared_ptr<ChartedManifold> base,
                                   std::shared_ptr<AffineConnection> base_connection,
                                   std::shared_ptr<LieGroup> gl2, FrameBase kind);

}  // namespace fiberlab
