#pragma once

#include <functional>
#include <memory>

#include "fiberlab/geometry/chart.hpp"

namespace fiberlab {

/// Christoffel coefficients at one point: gamma[i](j,k) = Gamma^i_jk.
using Tensor3 = std::vector<Eigen::MatrixXd>;

/// Levi-Civita coefficients from a metric value and its coordinate partials.
/// Throws ConditioningError when the metric is near-singular.
Tensor3 levi_civita_christoffel(const Eigen::MatrixXd& g, const std::vector<Eigen::MatrixXd>& dg);

/// Torsion-free unless stated otherwise; the horizontal-lift connection of a
/// curved base is the one deliberate exception (it carries torsion).
class AffineConnection {
public:
  AffineConnection(const ChartedManifold* m, bool symmetric) : manifold_(m), symmetric_(symmetric) {}
  virtual ~AffineConnection() = default;

  const ChartedManifold& manifold() const { return *manifold_; }
  bool symmetric() const { return symmetric_; }

  virtual Tensor3 christoffel(int chart, const Eigen::VectorXd& x) const = 0;

  /// R(u,v)w with the convention R(u,v)w = nabla_u nabla_v w - nabla_v nabla_u w
  /// for coordinate extensions; default differentiates christoffel centrally.
  virtual Eigen::VectorXd curvature(int chart, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                    const Eigen::VectorXd& v, const Eigen::VectorXd& w) const;

private:
  const ChartedManifold* manifold_;
  bool symmetric_;
};

class LeviCivitaConnection final : public AffineConnection {
public:
  explicit LeviCivitaConnection(const ChartedManifold* m)
      : AffineConnection(m, true), g_(m->metric_ptr()) {}
  LeviCivitaConnection(const ChartedManifold* m, std::shared_ptr<const MatrixFieldOnCharts> g)
      : AffineConnection(m, true), g_(std::move(g)) {}

  Tensor3 christoffel(int chart, const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd g;
    std::vector<Eigen::MatrixXd> dg;
    g_->value_and_partials(chart, x, g, dg);
    return levi_civita_christoffel(g, dg);
  }
  const MatrixFieldOnCharts& metric() const { return *g_; }

private:
  std::shared_ptr<const MatrixFieldOnCharts> g_;
};

/// Connection with directly supplied coefficients (analytic or computed).
class FunctionalConnection final : public AffineConnection {
public:
  using gamma_fn = std::function<Tensor3(int, const Eigen::VectorXd&)>;
  FunctionalConnection(const ChartedManifold* m, gamma_fn f, bool symmetric = true)
      : AffineConnection(m, symmetric), f_(std::move(f)) {}
  Tensor3 christoffel(int chart, const Eigen::VectorXd& x) const override { return f_(chart, x); }

private:
  gamma_fn f_;
};

/// Constant-curvature override: exact R for round spheres and flat spaces,
/// R(u,v)w = K (g(v,w) u - g(u,w) v).
class ConstantCurvatureConnection final : public AffineConnection {
public:
  ConstantCurvatureConnection(const ChartedManifold* m, std::shared_ptr<const MatrixFieldOnCharts> g,
                              double sectional)
      : AffineConnection(m, true), g_(std::move(g)), k_(sectional) {}

  Tensor3 christoffel(int chart, const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd g;
    std::vector<Eigen::MatrixXd> dg;
    g_->value_and_partials(chart, x, g, dg);
    return levi_civita_christoffel(g, dg);
  }

  Eigen::VectorXd curvature(int chart, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& v, const Eigen::VectorXd& w) const override {
    const Eigen::MatrixXd g = g_->value(chart, x);
    return k_ * ((v.dot(g * w)) * u - (u.dot(g * w)) * v);
  }

private:
  std::shared_ptr<const MatrixFieldOnCharts> g_;
  double k_;
};

}  // namespace fiberlab
