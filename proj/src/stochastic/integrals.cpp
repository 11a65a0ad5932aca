#include "fiberlab/stochastic/integrals.hpp"

#include "fiberlab/geometry/ops.hpp"

namespace fiberlab {

std::vector<double> strat_integral(const MatrixFieldOnCharts& alpha, const PathSample& path) {
  std::vector<double> z(static_cast<std::size_t>(path.steps()) + 1, 0.0);
  for (int k = 0; k < path.steps(); ++k) {
    const PathStep& s = path.step(k);
    const Eigen::VectorXd mid = 0.5 * (s.x0 + s.x1);
    z[static_cast<std::size_t>(k) + 1] =
        z[static_cast<std::size_t>(k)] + (alpha.value(s.chart, mid) * (s.x1 - s.x0))(0);
  }
  return z;
}

std::vector<double> ito_integral(const MatrixFieldOnCharts& alpha, const AffineConnection& conn,
                                 const PathSample& path) {
  std::vector<double> z(static_cast<std::size_t>(path.steps()) + 1, 0.0);
  for (int k = 0; k < path.steps(); ++k) {
    const PathStep& s = path.step(k);
    const Eigen::VectorXd d = s.x1 - s.x0;
    const Eigen::VectorXd corrected = d + 0.5 * gamma_apply(conn.christoffel(s.chart, s.x0), d, d);
    z[static_cast<std::size_t>(k) + 1] =
        z[static_cast<std::size_t>(k)] + (alpha.value(s.chart, s.x0) * corrected)(0);
  }
  return z;
}

std::vector<double> quadratic_integral(const MatrixFieldOnCharts& b, const PathSample& path) {
  std::vector<double> z(static_cast<std::size_t>(path.steps()) + 1, 0.0);
  for (int k = 0; k < path.steps(); ++k) {
    const PathStep& s = path.step(k);
    const Eigen::VectorXd d = s.x1 - s.x0;
    z[static_cast<std::size_t>(k) + 1] =
        z[static_cast<std::size_t>(k)] + d.dot(b.value(s.chart, s.x0) * d);
  }
  return z;
}

std::vector<Eigen::VectorXd> strat_integral_vec(const VecForm& alpha, const PathSample& path) {
  std::vector<Eigen::VectorXd> z(static_cast<std::size_t>(path.steps()) + 1);
  for (int k = 0; k < path.steps(); ++k) {
    const PathStep& s = path.step(k);
    const Eigen::VectorXd incr = alpha(ChartPoint{s.chart, 0.5 * (s.x0 + s.x1)}, s.x1 - s.x0);
    z[static_cast<std::size_t>(k) + 1] = (k == 0) ? incr : (z[static_cast<std::size_t>(k)] + incr).eval();
  }
  if (path.steps() > 0) z[0] = Eigen::VectorXd::Zero(z[1].size());
  return z;
}

std::vector<Eigen::VectorXd> quadratic_integral_vec(const VecBilinear& b, const PathSample& path) {
  std::vector<Eigen::VectorXd> z(static_cast<std::size_t>(path.steps()) + 1);
  for (int k = 0; k < path.steps(); ++k) {
    const PathStep& s = path.step(k);
    const Eigen::VectorXd d = s.x1 - s.x0;
    const Eigen::VectorXd incr = b(ChartPoint{s.chart, s.x0}, d, d);
    z[static_cast<std::size_t>(k) + 1] = (k == 0) ? incr : (z[static_cast<std::size_t>(k)] + incr).eval();
  }
  if (path.steps() > 0) z[0] = Eigen::VectorXd::Zero(z[1].size());
  return z;
}

std::vector<double> quadratic_integral_fn(const ScalarBilinear& b, const PathSample& path) {
  std::vector<double> z(static_cast<std::size_t>(path.steps()) + 1, 0.0);
  for (int k = 0; k < path.steps(); ++k) {
    const PathStep& s = path.step(k);
    const Eigen::VectorXd d = s.x1 - s.x0;
    z[static_cast<std::size_t>(k) + 1] = z[static_cast<std::size_t>(k)] + b(ChartPoint{s.chart, s.x0}, d, d);
  }
  return z;
}

std::vector<double> time_integral(const std::function<double(const ChartPoint&)>& f,
                                  const PathSample& path) {
  std::vector<double> z(static_cast<std::size_t>(path.steps()) + 1, 0.0);
  const double dt = path.grid().dt;
  for (int k = 0; k < path.steps(); ++k) {
    const PathStep& s = path.step(k);
    z[static_cast<std::size_t>(k) + 1] = z[static_cast<std::size_t>(k)] + dt * f(ChartPoint{s.chart, s.x0});
  }
  return z;
}

}  // namespace fiberlab
