#pragma once

#include "fiberlab/bundle/principal.hpp"

namespace fiberlab {

/// Connection form omega: algebra-valued 1-form on P. Stored as a
/// (dim G) x (dim P) component field per chart, with exact partials.
/// Exterior derivative convention (no 1/2 factor):
///   d alpha(U, V) = U(alpha(V)) - V(alpha(U)) - alpha([U, V]).
class ConnectionForm {
public:
  ConnectionForm(std::shared_ptr<const PrincipalBundle> bundle,
                 std::shared_ptr<const MatrixFieldOnCharts> omega)
      : bundle_(std::move(bundle)), omega_(std::move(omega)) {}

  const PrincipalBundle& bundle() const { return *bundle_; }
  const MatrixFieldOnCharts& omega_field() const { return *omega_; }

  /// omega(u) in algebra coefficients.
  Eigen::VectorXd apply(int chart, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
    return omega_->value(chart, x) * u;
  }

  Eigen::VectorXd vertical_part(const ChartPoint& p, const Eigen::VectorXd& u) const {
    return bundle_->sigma(p.chart, p.x) * apply(p.chart, p.x, u);
  }
  Eigen::VectorXd horizontal_part(const ChartPoint& p, const Eigen::VectorXd& u) const {
    return u - vertical_part(p, u);
  }

  /// Vertical projector P_v = sigma * omega and (optionally) its partials.
  void vertical_projector(int chart, const Eigen::VectorXd& x, Eigen::MatrixXd& P,
                          std::vector<Eigen::MatrixXd>* dP) const;

  /// Unique u with pi_*(u) = X and omega(u) = 0.
  Eigen::VectorXd horizontal_lift(const ChartPoint& p, const Eigen::VectorXd& X) const;
  /// All coordinate lifts at once: (dim P) x (dim M), X expressed in the chart
  /// that projection().value(p) selects.
  Eigen::MatrixXd horizontal_lift_matrix(const ChartPoint& p) const;

  /// Curvature form Omega(u, v) = d omega(hu, hv) in algebra coefficients
  /// (convention above; exact from the omega partials).
  Eigen::VectorXd curvature_form(const ChartPoint& p, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v) const;

  /// d omega on plain coordinate extensions (no horizontal projection).
  Eigen::VectorXd d_omega(int chart, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& v) const;

private:
  std::shared_ptr<const PrincipalBundle> bundle_;
  std::shared_ptr<const MatrixFieldOnCharts> omega_;
};

}  // namespace fiberlab
