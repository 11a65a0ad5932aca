#pragma once

#include <functional>

#include "fiberlab/geometry/connection.hpp"
#include "fiberlab/geometry/maps.hpp"

namespace fiberlab {

/// Vector field given by its components in one fixed chart.
using InChartField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Central directional derivative of an in-chart field.
Eigen::VectorXd directional_derivative(const InChartField& f, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& u);

/// (nabla_u V)^i = u^j d_j V^i + Gamma^i_jk u^j V^k at x, field version.
Eigen::VectorXd covariant_derivative(const AffineConnection& conn, int chart, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& u, const InChartField& V);

/// Same with a precomputed derivative term dV = D_u V (exact closures).
Eigen::VectorXd covariant_derivative_with(const Tensor3& gamma, const Eigen::VectorXd& u,
                                          const Eigen::VectorXd& v_at_x, const Eigen::VectorXd& dV);

/// Contraction Gamma(u,v) at a point.
Eigen::VectorXd gamma_apply(const Tensor3& gamma, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// g-orthonormal basis as matrix columns; deterministic ordering (ascending
/// eigenvalue) and sign (first nonzero component positive).
Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g);

/// Principal square root of g^{-1} (symmetric), for Brownian diffusion.
Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& g);

/// Musical isomorphism: g(sharp(alpha), v) = alpha(v).
Eigen::VectorXd sharp(const Eigen::MatrixXd& g, const Eigen::VectorXd& alpha);

/// d*alpha = -sum_i (nabla_{e_i} alpha)(e_i) over a g-orthonormal frame,
/// Levi-Civita connection of g.
double codifferential(const MatrixFieldOnCharts& alpha, const MatrixFieldOnCharts& g, int chart,
                      const Eigen::VectorXd& x);

/// beta_F(u,v) = nabla'_{F_* u}(F_* V) - F_*(nabla_u V) for the coordinate
/// extension V of v; returned in the chart F.value(p) selects.
Eigen::VectorXd second_fundamental_form(const SmoothMap& F, const AffineConnection& conn_src,
                                        const AffineConnection& conn_dst, const ChartPoint& p,
                                        const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// tau_F = sum_i beta_F(e_i, e_i) over a g-orthonormal frame of the source.
Eigen::VectorXd tension_field(const SmoothMap& F, const MatrixFieldOnCharts& g_src,
                              const AffineConnection& conn_src, const AffineConnection& conn_dst,
                              const ChartPoint& p);

/// One RK4 sweep of the geodesic equation x'' + Gamma(x', x') = 0 with chart
/// handover; returns the path sampled at the step points.
struct GeodesicResult {
  std::vector<ChartPoint> points;
  std::vector<Eigen::VectorXd> velocities;
};
GeodesicResult integrate_geodesic(const AffineConnection& conn, const ChartPoint& start,
                                  const Eigen::VectorXd& velocity, double time, int steps);

}  // namespace fiberlab
