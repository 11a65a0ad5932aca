#include "fiberlab/bundle/kaluza_klein.hpp"

namespace fiberlab {

bool is_ad_invariant(const LieGroup& group, const Eigen::MatrixXd& k0, RngStream& rng, double tol,
                     int trials) {
  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXd ad = group.adjoint_matrix(group.sample(rng));
    if (((ad.transpose() * k0 * ad) - k0).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

std::shared_ptr<MatrixFieldOnCharts> kaluza_klein_metric(
    std::shared_ptr<const PrincipalBundle> bundle, std::shared_ptr<const MatrixFieldOnCharts> base_metric,
    std::shared_ptr<const MatrixFieldOnCharts> omega, const Eigen::MatrixXd& k0, RngStream& rng) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k0);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw ConditioningError("fiber metric k0 must be positive definite");
  if (!is_ad_invariant(bundle->group(), k0, rng))
    throw ConditioningError("fiber metric k0 is not Ad-invariant");
  const int n = bundle->total().dim();
  auto value = [bundle, base_metric, omega, k0](int chart, const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    const ChartPoint p{chart, x};
    const ChartPoint down = bundle->projection().value(p);
    const Eigen::MatrixXd Jpi = bundle->projection().differential_into(p, down.chart);
    const Eigen::MatrixXd h = base_metric->value(down.chart, down.x);
    const Eigen::MatrixXd W = omega->value(chart, x);
    return Jpi.transpose() * h * Jpi + W.transpose() * k0 * W;
  };
  return std::make_shared<FunctionalMatrixField>(value, n, n);
}

}  // namespace fiberlab
