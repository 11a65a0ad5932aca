#include "fiberlab/geometry/builtins.hpp"

#include <cmath>

namespace fiberlab {

namespace {

struct FlatMetric {
  int dim;
  template <class T>
  TMat<T> operator()(int, const TVec<T>&) const {
    TMat<T> g(dim, dim);
    for (int i = 0; i < dim; ++i) g(i, i) = T(1.0);
    return g;
  }
};

struct ConformalSphereMetric {
  template <class T>
  TMat<T> operator()(int, const TVec<T>& x) const {
    const T s = x[0] * x[0] + x[1] * x[1];
    const T f = T(4.0) / ((T(1.0) + s) * (T(1.0) + s));
    TMat<T> g(2, 2);
    g(0, 0) = f;
    g(1, 1) = f;
    return g;
  }
};

struct SphereInversion {
  template <class T>
  TVec<T> operator()(const TVec<T>& x) const {
    T s(0.0);
    for (const T& xi : x) s += xi * xi;
    TVec<T> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / s;
    return y;
  }
};

/// Left-invariant metric on unit quaternions: sum_a w_a (sigma^a)^2 where
/// sigma^a is dual to the basis {i/2, j/2, k/2}, sigma^a(U) = 2 (qbar U)_a.
struct Su2Metric {
  double w1, w2, w3;
  template <class T>
  TMat<T> operator()(int chart, const TVec<T>& x) const {
    const TQuat<T> q = quat_from_stereo(x, chart);
    const TQuat<T> qc = q.conj();
    TMat<T> cof(3, 3);
    for (int i = 0; i < 3; ++i) {
      const TQuat<T> dq = quat_stereo_partial(x, chart, i);
      const TQuat<T> mc = qc * dq;
      cof(0, i) = T(2.0) * mc.x;
      cof(1, i) = T(2.0) * mc.y;
      cof(2, i) = T(2.0) * mc.z;
    }
    const double w[3] = {w1, w2, w3};
    TMat<T> g(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        T acc(0.0);
        for (int a = 0; a < 3; ++a) acc += T(w[a]) * cof(a, i) * cof(a, j);
        g(i, j) = acc;
      }
    return g;
  }
};

double sup_norm(const Eigen::VectorXd& x) { return x.cwiseAbs().maxCoeff(); }

}  // namespace

std::shared_ptr<ChartedManifold> make_euclidean_space(int dim) {
  auto m = std::make_shared<ChartedManifold>("R^" + std::to_string(dim), dim);
  m->add_chart({"global", [](const Eigen::VectorXd&) { return true; },
                [](const Eigen::VectorXd& x) { return x.norm(); }});
  m->set_metric(make_matrix_field(FlatMetric{dim}, dim, dim));
  return m;
}

std::shared_ptr<ChartedManifold> make_sphere2() {
  auto m = std::make_shared<ChartedManifold>("S^2", 2);
  for (int c = 0; c < 2; ++c) {
    m->add_chart({c == 0 ? "stereo-south" : "stereo-north",
                  [](const Eigen::VectorXd& x) { return x.norm() < 8.0; },
                  [](const Eigen::VectorXd& x) { return std::max(x.norm(), 2.0); }});
  }
  m->add_transition(0, 1, std::make_shared<AnalyticTransition<SphereInversion>>(SphereInversion{}));
  m->add_transition(1, 0, std::make_shared<AnalyticTransition<SphereInversion>>(SphereInversion{}));
  m->set_metric(make_matrix_field(ConformalSphereMetric{}, 2, 2));
  // ambient unit sphere: chart 0 maps u to the point with z = (1-|u|^2)/(1+|u|^2)
  ChartedManifold::Embedding emb;
  emb.embed = [](const ChartPoint& p) {
    const double s = p.x.squaredNorm();
    Eigen::VectorXd y(3);
    y << 2.0 * p.x[0] / (1.0 + s), 2.0 * p.x[1] / (1.0 + s), (1.0 - s) / (1.0 + s);
    if (p.chart == 1) y[2] = -y[2];
    return y;
  };
  emb.tangent = [f = emb.embed](const ChartPoint& p) {
    const double h = 1e-6;
    Eigen::MatrixXd J(3, 2);
    for (int k = 0; k < 2; ++k) {
      ChartPoint pp = p, pm = p;
      pp.x[k] += h;
      pm.x[k] -= h;
      J.col(k) = (f(pp) - f(pm)) / (2.0 * h);
    }
    return J;
  };
  m->set_embedding(std::move(emb));
  return m;
}

std::shared_ptr<ChartedManifold> make_flat_torus2() {
  auto m = std::make_shared<ChartedManifold>("T^2", 2);
  const double off[4][2] = {{0.0, 0.0}, {M_PI, 0.0}, {0.0, M_PI}, {M_PI, M_PI}};
  for (int c = 0; c < 4; ++c) {
    m->add_chart({"patch-" + std::to_string(c), [](const Eigen::VectorXd& x) { return sup_norm(x) < M_PI; },
                  [](const Eigen::VectorXd& x) { return sup_norm(x); }});
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      Eigen::VectorXd shift(2);
      shift << off[a][0] - off[b][0], off[a][1] - off[b][1];
      m->add_transition(a, b, std::make_shared<ShiftWrapTransition>(shift));
    }
  m->set_metric(make_matrix_field(FlatMetric{2}, 2, 2));
  return m;
}

std::shared_ptr<ChartedManifold> make_interval(double a, double b) {
  auto m = std::make_shared<ChartedManifold>("interval", 1);
  m->add_chart({"global", [a, b](const Eigen::VectorXd& x) { return x[0] > a && x[0] < b; },
                [a, b](const Eigen::VectorXd& x) { return std::abs(x[0] - 0.5 * (a + b)); }});
  m->set_metric(make_matrix_field(FlatMetric{1}, 1, 1));
  return m;
}

std::shared_ptr<ChartedManifold> make_circle() {
  auto m = std::make_shared<ChartedManifold>("S^1", 2);
  for (int c = 0; c < 2; ++c) {
    m->add_chart({"angle-" + std::to_string(c),
                  [](const Eigen::VectorXd& x) { return std::abs(x[0]) < M_PI; },
                  [](const Eigen::VectorXd& x) { return std::abs(x[0]); }});
  }
  Eigen::VectorXd shift(1);
  shift << M_PI;
  m->add_transition(0, 1, std::make_shared<ShiftWrapTransition>(shift));
  m->add_transition(1, 0, std::make_shared<ShiftWrapTransition>(shift));
  m->set_metric(make_matrix_field(FlatMetric{1}, 1, 1));
  return m;
}

std::shared_ptr<ChartedManifold> make_su2_manifold(double w1, double w2, double w3) {
  auto m = std::make_shared<ChartedManifold>("SU(2)", 3);
  for (int c = 0; c < 2; ++c) {
    m->add_chart({c == 0 ? "stereo-plus" : "stereo-minus",
                  [](const Eigen::VectorXd& x) { return x.norm() < 8.0; },
                  [](const Eigen::VectorXd& x) { return std::max(x.norm(), 2.0); }});
  }
  m->add_transition(0, 1, std::make_shared<AnalyticTransition<SphereInversion>>(SphereInversion{}));
  m->add_transition(1, 0, std::make_shared<AnalyticTransition<SphereInversion>>(SphereInversion{}));
  m->set_metric(make_matrix_field(Su2Metric{w1, w2, w3}, 3, 3));
  return m;
}

}  // namespace fiberlab
