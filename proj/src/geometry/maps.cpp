#include "fiberlab/geometry/maps.hpp"

namespace fiberlab {

Eigen::MatrixXd SmoothMap::differential_into(const ChartPoint& p, int dst_chart) const {
  const int n = static_cast<int>(p.x.size());
  const double h = fd_step(p.x);
  Eigen::MatrixXd J;
  for (int k = 0; k < n; ++k) {
    ChartPoint pp = p, pm = p;
    pp.x[k] += h;
    pm.x[k] -= h;
    const Eigen::VectorXd yp = target().to_chart(value(pp), dst_chart);
    const Eigen::VectorXd ym = target().to_chart(value(pm), dst_chart);
    const Eigen::VectorXd col = (yp - ym) / (2.0 * h);
    if (J.size() == 0) J.resize(col.size(), n);
    J.col(k) = col;
  }
  return J;
}

}  // namespace fiberlab
