#pragma once

#include "fiberlab/analysis/martingale.hpp"

namespace fiberlab {

/// Curve into the total space built from a geodesic integration; the
/// differential is the stored velocity (exact), higher derivatives come from
/// finite differences of cached states.
class GeodesicCurveMap final : public SmoothMap {
public:
  GeodesicCurveMap(const ChartedManifold* interval, const AffineConnection& conn, const ChartPoint& start,
                   const Eigen::VectorXd& velocity, double t0, double t1, int cache_steps = 2000);

  ChartPoint value(const ChartPoint& p) const override { return state(p.x[0]).first; }
  Eigen::MatrixXd differential_into(const ChartPoint& p, int dst_chart) const override;

private:
  std::pair<ChartPoint, Eigen::VectorXd> state(double t) const;

  const AffineConnection* conn_;
  double t0_, dt_;
  std::vector<ChartPoint> nodes_;
  std::vector<Eigen::VectorXd> velocities_;
};

struct HarmonicSample {
  Eigen::VectorXd source;  // source coordinates
  double r1 = 0.0;         // |d* F* omega - tr F*(nabla omega)|
  double r2 = 0.0;         // |tau_{pi o F} + tr pi_*((2A^S+T^S) o F_* x F_*)|
};

struct HarmonicReport {
  std::vector<HarmonicSample> samples;
  int holes = 0;  // grid points where evaluation failed
  double r1_max() const {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, s.r1);
    return m;
  }
  double r2_max() const {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, s.r2);
    return m;
  }
};

/// The two pointwise residuals of the harmonicity characterization for a map
/// F: (N, g) -> P over a grid of source points.
HarmonicReport harmonic_conditions(const Scenario& sc, const FundamentalTensors& ft, const SmoothMap& F,
                                   const MatrixFieldOnCharts& g_src, const AffineConnection& conn_src,
                                   const AffineConnection& nablaM, const std::vector<ChartPoint>& grid);

}  // namespace fiberlab
