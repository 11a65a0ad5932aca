#pragma once

#include <memory>

#include "fiberlab/geometry/chart.hpp"

namespace fiberlab {

/// R^n with one global chart and the Euclidean metric.
std::shared_ptr<ChartedManifold> make_euclidean_space(int dim);

/// Unit round 2-sphere in two stereographic charts (projection from the two
/// poles, transition u -> u/|u|^2), conformal metric 4/(1+|u|^2)^2.
/// Handover once the chart-coordinate norm exceeds 2.
std::shared_ptr<ChartedManifold> make_sphere2();

/// Flat 2-torus with angles mod 2pi, four shifted charts covering the cuts.
std::shared_ptr<ChartedManifold> make_flat_torus2();

/// Open interval (a, b) with the flat metric.
std::shared_ptr<ChartedManifold> make_interval(double a, double b);

/// Circle with two angle charts offset by pi.
std::shared_ptr<ChartedManifold> make_circle();

/// Unit quaternions (S^3) in two stereographic charts; metric is the
/// left-invariant one with coframe weights (w1, w2, w3) in the basis
/// {i/2, j/2, k/2} of su(2). (1,1,1) is the bi-invariant round metric,
/// (1,1,lambda^2) the Berger family.
std::shared_ptr<ChartedManifold> make_su2_manifold(double w1, double w2, double w3);

/// Shift-and-wrap transition for angle coordinates; Jacobian is exactly I.
/// Only coordinates flagged in `wrap` are reduced mod 2pi.
class ShiftWrapTransition final : public ChartTransition {
public:
  explicit ShiftWrapTransition(Eigen::VectorXd shift)
      : shift_(std::move(shift)), wrap_(shift_.size(), true) {}
  ShiftWrapTransition(Eigen::VectorXd shift, std::vector<bool> wrap)
      : shift_(std::move(shift)), wrap_(std::move(wrap)) {}

  Eigen::VectorXd value(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd y = x + shift_;
    for (int i = 0; i < y.size(); ++i) {
      if (wrap_[static_cast<std::size_t>(i)]) y[i] = std::remainder(y[i], 2.0 * M_PI);
    }
    return y;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const override {
    return Eigen::MatrixXd::Identity(x.size(), x.size());
  }

private:
  Eigen::VectorXd shift_;
  std::vector<bool> wrap_;
};

}  // namespace fiberlab
