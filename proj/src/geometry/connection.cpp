#include "fiberlab/geometry/connection.hpp"

namespace fiberlab {

Tensor3 levi_civita_christoffel(const Eigen::MatrixXd& g, const std::vector<Eigen::MatrixXd>& dg) {
  const int n = static_cast<int>(g.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.eigenvalues().minCoeff() <= 1e-10)
    throw ConditioningError("metric is not positive definite at the requested point");
  const Eigen::MatrixXd gi = g.inverse();
  Tensor3 out(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      Eigen::VectorXd first(n);  // Gamma_{l,jk}
      for (int l = 0; l < n; ++l)
        first[l] = 0.5 * (dg[static_cast<std::size_t>(j)](l, k) + dg[static_cast<std::size_t>(k)](l, j) -
                          dg[static_cast<std::size_t>(l)](j, k));
      const Eigen::VectorXd up = gi * first;
      for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)](j, k) = up[i];
        out[static_cast<std::size_t>(i)](k, j) = up[i];
      }
    }
  return out;
}

Eigen::VectorXd AffineConnection::curvature(int chart, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                            const Eigen::VectorXd& v, const Eigen::VectorXd& w) const {
  const int n = static_cast<int>(x.size());
  const double h = fd_step(x);
  auto gamma_vw = [&](const Eigen::VectorXd& y, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const Tensor3 G = christoffel(chart, y);
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r[i] = a.dot(G[static_cast<std::size_t>(i)] * b);
    return r;
  };
  auto ddir = [&](const Eigen::VectorXd& dir, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double norm = dir.norm();
    if (norm == 0.0) return Eigen::VectorXd::Zero(n).eval();
    const Eigen::VectorXd e = dir / norm;
    return ((gamma_vw(x + h * e, a, b) - gamma_vw(x - h * e, a, b)) / (2.0 * h) * norm).eval();
  };
  // coordinate extensions commute, so R(u,v)w = D_u Gamma(v,w) - D_v Gamma(u,w)
  //                                          + Gamma(u, Gamma(v,w)) - Gamma(v, Gamma(u,w))
  const Tensor3 G = christoffel(chart, x);
  auto gam = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r[i] = a.dot(G[static_cast<std::size_t>(i)] * b);
    return r;
  };
  return ddir(u, v, w) - ddir(v, u, w) + gam(u, gam(v, w)) - gam(v, gam(u, w));
}

}  // namespace fiberlab
