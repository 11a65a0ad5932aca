#pragma once

#include "fiberlab/geometry/connection.hpp"
#include "fiberlab/stochastic/path.hpp"

namespace fiberlab {

/// All integrals return the running process Z_0 = 0, Z_1, ..., Z_K.

/// Stratonovich: midpoint sums alpha((x_k + x_{k+1})/2) . dx_k per step chart.
std::vector<double> strat_integral(const MatrixFieldOnCharts& alpha, const PathSample& path);

/// Ito with connection correction:
/// sum alpha_i(x_k) [dx^i + 1/2 Gamma^i_jk(x_k) dx^j dx^k].
std::vector<double> ito_integral(const MatrixFieldOnCharts& alpha, const AffineConnection& conn,
                                 const PathSample& path);

/// Quadratic: sum b_ij(x_k) dx^i dx^j.
std::vector<double> quadratic_integral(const MatrixFieldOnCharts& b, const PathSample& path);

/// Generic variants for algebra-valued and pointwise-evaluated integrands.
using VecForm = std::function<Eigen::VectorXd(const ChartPoint&, const Eigen::VectorXd&)>;
using VecBilinear =
    std::function<Eigen::VectorXd(const ChartPoint&, const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using ScalarBilinear =
    std::function<double(const ChartPoint&, const Eigen::VectorXd&, const Eigen::VectorXd&)>;

std::vector<Eigen::VectorXd> strat_integral_vec(const VecForm& alpha, const PathSample& path);
std::vector<Eigen::VectorXd> quadratic_integral_vec(const VecBilinear& b, const PathSample& path);
std::vector<double> quadratic_integral_fn(const ScalarBilinear& b, const PathSample& path);

/// Riemann sum of a time integrand f(x_k) dt (for the time-integral sides of
/// the Brownian-property and codifferential checks).
std::vector<double> time_integral(const std::function<double(const ChartPoint&)>& f,
                                  const PathSample& path);

}  // namespace fiberlab
