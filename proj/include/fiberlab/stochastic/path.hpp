#pragma once

#include <iosfwd>

#include "fiberlab/geometry/chart.hpp"

namespace fiberlab {

/// Uniform grid on [0, T] stored as (dt, steps) so that steps * dt is the
/// horizon by construction.
struct TimeGrid {
  double dt = 1e-3;
  int steps = 1000;
  double horizon() const { return dt * steps; }

  static TimeGrid from_horizon(double T, double dt) {
    TimeGrid g;
    g.dt = dt;
    g.steps = static_cast<int>(std::llround(T / dt));
    if (g.steps <= 0 || std::abs(g.steps * dt - T) > 1e-9 * std::max(1.0, T))
      throw ConfigError("horizon is not an integer multiple of dt");
    return g;
  }
};

/// One step of a discrete path: both endpoints expressed in the same chart,
/// so increments and midpoints are well-defined for the integrals.
struct PathStep {
  int chart = 0;
  Eigen::VectorXd x0, x1;
};

class PathSample {
public:
  PathSample() = default;
  PathSample(const ChartedManifold* manifold, TimeGrid grid) : manifold_(manifold), grid_(grid) {}

  const ChartedManifold& manifold() const { return *manifold_; }
  const TimeGrid& grid() const { return grid_; }
  int steps() const { return static_cast<int>(steps_.size()); }
  const PathStep& step(int k) const { return steps_[static_cast<std::size_t>(k)]; }
  std::vector<PathStep>& mutable_steps() { return steps_; }
  const std::vector<PathStep>& all_steps() const { return steps_; }

  /// State after k steps (k = 0 .. steps()).
  ChartPoint point(int k) const {
    if (k == 0) return start_;
    const PathStep& s = steps_[static_cast<std::size_t>(k - 1)];
    return {s.chart, s.x1};
  }
  void set_start(ChartPoint p) { start_ = std::move(p); }
  const ChartPoint& start() const { return start_; }

  /// Per-step driving noise, retained for integral evaluation.
  std::vector<Eigen::VectorXd>& mutable_noise() { return noise_; }
  const std::vector<Eigen::VectorXd>& noise() const { return noise_; }

private:
  const ChartedManifold* manifold_ = nullptr;
  TimeGrid grid_;
  ChartPoint start_;
  std::vector<PathStep> steps_;
  std::vector<Eigen::VectorXd> noise_;
};

class PathEnsemble {
public:
  PathEnsemble() = default;
  PathEnsemble(const ChartedManifold* manifold, TimeGrid grid, std::uint64_t seed)
      : manifold_(manifold), grid_(grid), seed_(seed) {}

  const ChartedManifold& manifold() const { return *manifold_; }
  const TimeGrid& grid() const { return grid_; }
  std::uint64_t seed() const { return seed_; }
  int size() const { return static_cast<int>(paths_.size()); }
  const PathSample& path(int i) const { return paths_[static_cast<std::size_t>(i)]; }
  std::vector<PathSample>& mutable_paths() { return paths_; }

private:
  const ChartedManifold* manifold_ = nullptr;
  TimeGrid grid_;
  std::uint64_t seed_ = 0;
  std::vector<PathSample> paths_;
};

/// Columnar CSV: path id, step, chart id, coordinates.
void write_ensemble_csv(std::ostream& os, const PathEnsemble& ens);

/// Compact binary layout (little-endian):
///   magic "FLPE", u32 version = 1, u32 paths, u32 steps, u32 dim, f64 dt,
///   then per path: u64 seed-stream id, per state k = 0..steps:
///   u32 chart, dim x f64 coordinates.
void write_ensemble_binary(std::ostream& os, const PathEnsemble& ens);
PathEnsemble read_ensemble_binary(std::istream& is, const ChartedManifold* manifold);

}  // namespace fiberlab
