#include "fiberlab/bundle/principal.hpp"

namespace fiberlab {

Eigen::MatrixXd RightAction::differential_into(const ChartPoint& p, const Eigen::MatrixXcd& g,
                                               int dst_chart) const {
  const int n = static_cast<int>(p.x.size());
  const double h = fd_step(p.x);
  Eigen::MatrixXd J(n, n);
  for (int k = 0; k < n; ++k) {
    ChartPoint pp = p, pm = p;
    pp.x[k] += h;
    pm.x[k] -= h;
    const Eigen::VectorXd yp = total().to_chart(act(pp, g), dst_chart);
    const Eigen::VectorXd ym = total().to_chart(act(pm, g), dst_chart);
    J.col(k) = (yp - ym) / (2.0 * h);
  }
  return J;
}

}  // namespace fiberlab
