#pragma once

#include "fiberlab/bundle/scenarios.hpp"
#include "fiberlab/stochastic/path.hpp"

namespace fiberlab {

/// One driving field: either multiplied by its own Brownian increment or by dt.
struct Driver {
  enum class Kind { Brownian, Drift };
  Kind kind = Kind::Brownian;
  std::function<Eigen::VectorXd(const ChartPoint&)> field;
  std::string label;
};

/// Named driver configurations for the experiment runner. Coefficients refer
/// to base orthonormal frame directions (horizontal) or algebra basis
/// elements (vertical).
struct DriverSpec {
  std::string name;                  // "horizontal-brownian", "vertical-brownian",
                                     // "horizontal-drift", "vertical-drift"
  Eigen::VectorXd coefficients;      // drift magnitude per direction (drift kinds)
};

std::vector<Driver> make_drivers(const std::shared_ptr<Scenario>& sc, const std::vector<DriverSpec>& specs);
DriverSpec parse_driver_spec(const std::string& text, const Scenario& sc);

/// Stratonovich-Heun (predictor-corrector midpoint) integration of
/// dY = sum_a V_a(Y) o dW^a + sum_d D_d(Y) dt. Throws RefinementError when a
/// step outruns the chart guard.
PathSample simulate_heun(const ChartedManifold& M, const std::vector<Driver>& drivers,
                         const ChartPoint& start, const TimeGrid& grid, RngStream& rng,
                         double chart_guard = 2.0);

/// Euler scheme for the metric Brownian motion in a chart:
/// dX^i = -1/2 g^{jk} Gamma^i_jk dt + sigma^i_a dW^a with sigma sigma^T = g^{-1}.
PathSample brownian_chart(const ChartedManifold& M, const MatrixFieldOnCharts& g,
                          const AffineConnection& levi_civita, const ChartPoint& start,
                          const TimeGrid& grid, RngStream& rng, double chart_guard = 2.0);

/// Horizontal (frame-bundle) Brownian motion: Stratonovich-Heun on the
/// drivers H(p e_a); returns the bundle path and its projection. The initial
/// frame must be orthonormal for the base metric.
std::pair<PathSample, PathSample> brownian_development(const Scenario& sc, const ChartPoint& start,
                                                       const TimeGrid& grid, RngStream& rng);

/// Frame-bundle point over the given base point whose frame is the
/// deterministic orthonormal frame of the base metric there.
ChartPoint orthonormal_frame_start(const Scenario& sc, const ChartPoint& base_point);

/// Project a bundle path to the base, keeping per-step chart consistency.
PathSample project_path(const Scenario& sc, const PathSample& total_path);

/// Image of a path under a smooth map, keeping per-step chart consistency.
PathSample map_path(const SmoothMap& F, const PathSample& src);

/// Parallel ensemble generation; path i uses the stream (seed, i), so the
/// result is bit-identical for any worker count.
PathEnsemble simulate_ensemble(const ChartedManifold& M, const std::vector<Driver>& drivers,
                               const std::function<ChartPoint(int)>& start_of_path, const TimeGrid& grid,
                               int paths, std::uint64_t seed, int threads = 0);

PathEnsemble brownian_ensemble(const ChartedManifold& M, const MatrixFieldOnCharts& g,
                               const AffineConnection& levi_civita,
                               const std::function<ChartPoint(int)>& start_of_path, const TimeGrid& grid,
                               int paths, std::uint64_t seed, int threads = 0);

}  // namespace fiberlab
