#include "fiberlab/bundle/connection_form.hpp"

namespace fiberlab {

void ConnectionForm::vertical_projector(int chart, const Eigen::VectorXd& x, Eigen::MatrixXd& P,
                                        std::vector<Eigen::MatrixXd>* dP) const {
  Eigen::MatrixXd W, S;
  if (dP == nullptr) {
    W = omega_->value(chart, x);
    S = bundle_->sigma(chart, x);
    P = S * W;
    return;
  }
  std::vector<Eigen::MatrixXd> dW, dS;
  omega_->value_and_partials(chart, x, W, dW);
  bundle_->sigma_field().value_and_partials(chart, x, S, dS);
  P = S * W;
  dP->resize(dW.size());
  for (std::size_t k = 0; k < dW.size(); ++k) (*dP)[k] = dS[k] * W + S * dW[k];
}

Eigen::VectorXd ConnectionForm::horizontal_lift(const ChartPoint& p, const Eigen::VectorXd& X) const {
  const Eigen::MatrixXd lift = horizontal_lift_matrix(p);
  return lift * X;
}

Eigen::MatrixXd ConnectionForm::horizontal_lift_matrix(const ChartPoint& p) const {
  const auto [base_chart, Jpi] = bundle_->projection().differential(p);
  (void)base_chart;
  const Eigen::MatrixXd W = omega_->value(p.chart, p.x);
  const int dp = static_cast<int>(Jpi.cols());
  const int dm = static_cast<int>(Jpi.rows());
  const int dg = static_cast<int>(W.rows());
  Eigen::MatrixXd sys(dm + dg, dp);
  sys.topRows(dm) = Jpi;
  sys.bottomRows(dg) = W;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(dm + dg, dm);
  rhs.topLeftCorner(dm, dm).setIdentity();
  return sys.partialPivLu().solve(rhs);
}

Eigen::VectorXd ConnectionForm::d_omega(int chart, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                        const Eigen::VectorXd& v) const {
  Eigen::MatrixXd W;
  std::vector<Eigen::MatrixXd> dW;
  omega_->value_and_partials(chart, x, W, dW);
  const int dg = static_cast<int>(W.rows());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dg);
  for (int k = 0; k < static_cast<int>(dW.size()); ++k) out += u[k] * (dW[static_cast<std::size_t>(k)] * v) - v[k] * (dW[static_cast<std::size_t>(k)] * u);
  return out;
}

Eigen::VectorXd ConnectionForm::curvature_form(const ChartPoint& p, const Eigen::VectorXd& u,
                                               const Eigen::VectorXd& v) const {
  const Eigen::VectorXd hu = horizontal_part(p, u);
  const Eigen::VectorXd hv = horizontal_part(p, v);
  return d_omega(p.chart, p.x, hu, hv);
}

}  // namespace fiberlab
