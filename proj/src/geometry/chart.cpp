#include "fiberlab/geometry/chart.hpp"

namespace fiberlab {

std::vector<Eigen::MatrixXd> MatrixFieldOnCharts::partials(int chart, const Eigen::VectorXd& x) const {
  const int n = static_cast<int>(x.size());
  const double h = fd_step(x);
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    out[static_cast<std::size_t>(k)] = (value(chart, xp) - value(chart, xm)) / (2.0 * h);
  }
  return out;
}

void MatrixFieldOnCharts::value_and_partials(int chart, const Eigen::VectorXd& x, Eigen::MatrixXd& val,
                                             std::vector<Eigen::MatrixXd>& parts) const {
  val = value(chart, x);
  parts = partials(chart, x);
}

Eigen::MatrixXd ChartTransition::jacobian(const Eigen::VectorXd& x) const {
  const int n = static_cast<int>(x.size());
  const double h = fd_step(x);
  Eigen::MatrixXd J;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const Eigen::VectorXd col = (value(xp) - value(xm)) / (2.0 * h);
    if (J.size() == 0) J.resize(col.size(), n);
    J.col(k) = col;
  }
  return J;
}

const ChartTransition& ChartedManifold::transition(int from, int to) const {
  auto it = transitions_.find({from, to});
  if (it == transitions_.end())
    throw DomainError(name_ + ": no transition chart " + std::to_string(from) + " -> " + std::to_string(to));
  return *it->second;
}

Eigen::VectorXd ChartedManifold::to_chart(const ChartPoint& p, int to) const {
  if (p.chart == to) return p.x;
  return transition(p.chart, to).value(p.x);
}

Eigen::MatrixXd ChartedManifold::transition_jacobian(int from, int to, const Eigen::VectorXd& x) const {
  if (from == to) return Eigen::MatrixXd::Identity(dim_, dim_);
  return transition(from, to).jacobian(x);
}

ChartPoint ChartedManifold::normalize(const ChartPoint& p) const {
  int best = p.chart;
  double best_score = charts_[static_cast<std::size_t>(p.chart)].comfort(p.x);
  for (int c = 0; c < num_charts(); ++c) {
    if (c == p.chart || !has_transition(p.chart, c)) continue;
    const Eigen::VectorXd y = to_chart(p, c);
    if (!charts_[static_cast<std::size_t>(c)].contains(y)) continue;
    const double s = charts_[static_cast<std::size_t>(c)].comfort(y);
    if (s < best_score - 1e-12) {
      best = c;
      best_score = s;
    }
  }
  if (best == p.chart) return p;
  return ChartPoint{best, to_chart(p, best)};
}

}  // namespace fiberlab
