#include "fiberlab/geometry/ops.hpp"

namespace fiberlab {

Eigen::VectorXd directional_derivative(const InChartField& f, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& u) {
  const double norm = u.norm();
  if (norm == 0.0) return Eigen::VectorXd::Zero(f(x).size());
  const double h = fd_step(x);
  const Eigen::VectorXd e = u / norm;
  return (f(x + h * e) - f(x - h * e)) / (2.0 * h) * norm;
}

Eigen::VectorXd gamma_apply(const Tensor3& gamma, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const int n = static_cast<int>(gamma.size());
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) r[i] = u.dot(gamma[static_cast<std::size_t>(i)] * v);
  return r;
}

Eigen::VectorXd covariant_derivative(const AffineConnection& conn, int chart, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& u, const InChartField& V) {
  const Tensor3 G = conn.christoffel(chart, x);
  return directional_derivative(V, x, u) + gamma_apply(G, u, V(x));
}

Eigen::VectorXd covariant_derivative_with(const Tensor3& gamma, const Eigen::VectorXd& u,
                                          const Eigen::VectorXd& v_at_x, const Eigen::VectorXd& dV) {
  return dV + gamma_apply(gamma, u, v_at_x);
}

Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.eigenvalues().minCoeff() <= 1e-10)
    throw ConditioningError("degenerate metric: cannot build an orthonormal frame");
  Eigen::MatrixXd frame = es.eigenvectors();
  for (int j = 0; j < frame.cols(); ++j) {
    for (int i = 0; i < frame.rows(); ++i) {
      if (std::abs(frame(i, j)) > 1e-12) {
        if (frame(i, j) < 0.0) frame.col(j) = -frame.col(j);
        break;
      }
    }
    frame.col(j) /= std::sqrt(es.eigenvalues()[j]);
  }
  return frame;
}

Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.eigenvalues().minCoeff() <= 1e-10)
    throw ConditioningError("degenerate metric: cannot take inverse square root");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

Eigen::VectorXd sharp(const Eigen::MatrixXd& g, const Eigen::VectorXd& alpha) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.eigenvalues().minCoeff() <= 1e-10) throw ConditioningError("degenerate metric in sharp");
  return g.llt().solve(alpha);
}

double codifferential(const MatrixFieldOnCharts& alpha, const MatrixFieldOnCharts& g, int chart,
                      const Eigen::VectorXd& x) {
  Eigen::MatrixXd gval, aval;
  std::vector<Eigen::MatrixXd> dg, da;
  g.value_and_partials(chart, x, gval, dg);
  alpha.value_and_partials(chart, x, aval, da);
  const Tensor3 G = levi_civita_christoffel(gval, dg);
  const Eigen::MatrixXd frame = orthonormal_frame(gval);
  const int n = static_cast<int>(x.size());
  double out = 0.0;
  for (int a = 0; a < n; ++a) {
    const Eigen::VectorXd e = frame.col(a);
    // (nabla_e alpha)(e) = e^k d_k alpha_i e^i - alpha(Gamma(e,e))
    double term = 0.0;
    for (int k = 0; k < n; ++k) term += e[k] * (da[static_cast<std::size_t>(k)].row(0) * e)(0);
    term -= (aval.row(0) * gamma_apply(G, e, e))(0);
    out -= term;
  }
  return out;
}

Eigen::VectorXd second_fundamental_form(const SmoothMap& F, const AffineConnection& conn_src,
                                        const AffineConnection& conn_dst, const ChartPoint& p,
                                        const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const auto [dst_chart, J] = F.differential(p);
  const ChartPoint q0 = F.value(p);
  const Eigen::VectorXd y0 = F.target().to_chart(q0, dst_chart);
  // field along F: W(x) = J_F(x) v, differentiated along u in the source chart
  InChartField W = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return F.differential_into({p.chart, x}, dst_chart) * v;
  };
  const Eigen::VectorXd dW = directional_derivative(W, p.x, u);
  const Tensor3 Gdst = conn_dst.christoffel(dst_chart, y0);
  const Eigen::VectorXd pullback_term = dW + gamma_apply(Gdst, J * u, J * v);
  const Tensor3 Gsrc = conn_src.christoffel(p.chart, p.x);
  return pullback_term - J * gamma_apply(Gsrc, u, v);
}

Eigen::VectorXd tension_field(const SmoothMap& F, const MatrixFieldOnCharts& g_src,
                              const AffineConnection& conn_src, const AffineConnection& conn_dst,
                              const ChartPoint& p) {
  const Eigen::MatrixXd frame = orthonormal_frame(g_src.value(p.chart, p.x));
  Eigen::VectorXd out;
  for (int a = 0; a < frame.cols(); ++a) {
    const Eigen::VectorXd b = second_fundamental_form(F, conn_src, conn_dst, p, frame.col(a), frame.col(a));
    if (out.size() == 0)
      out = b;
    else
      out += b;
  }
  return out;
}

GeodesicResult integrate_geodesic(const AffineConnection& conn, const ChartPoint& start,
                                  const Eigen::VectorXd& velocity, double time, int steps) {
  const ChartedManifold& M = conn.manifold();
  GeodesicResult res;
  ChartPoint p = start;
  Eigen::VectorXd v = velocity;
  res.points.push_back(p);
  res.velocities.push_back(v);
  const double dt = time / steps;
  auto acc = [&](int chart, const Eigen::VectorXd& x, const Eigen::VectorXd& vel) -> Eigen::VectorXd {
    return -gamma_apply(conn.christoffel(chart, x), vel, vel);
  };
  for (int k = 0; k < steps; ++k) {
    const Eigen::VectorXd k1x = v, k1v = acc(p.chart, p.x, v);
    const Eigen::VectorXd k2x = v + 0.5 * dt * k1v, k2v = acc(p.chart, p.x + 0.5 * dt * k1x, k2x);
    const Eigen::VectorXd k3x = v + 0.5 * dt * k2v, k3v = acc(p.chart, p.x + 0.5 * dt * k2x, k3x);
    const Eigen::VectorXd k4x = v + dt * k3v, k4v = acc(p.chart, p.x + dt * k3x, k4x);
    ChartPoint next{p.chart, p.x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)};
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    const ChartPoint renorm = M.normalize(next);
    if (renorm.chart != next.chart) {
      v = M.transition_jacobian(next.chart, renorm.chart, next.x) * v;
      next = renorm;
    }
    p = next;
    res.points.push_back(p);
    res.velocities.push_back(v);
  }
  return res;
}

}  // namespace fiberlab
