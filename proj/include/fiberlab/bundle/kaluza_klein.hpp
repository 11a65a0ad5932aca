#pragma once

#include "fiberlab/bundle/connection_form.hpp"

namespace fiberlab {

/// Checks that k0 (a metric on the algebra, in basis coefficients) is
/// invariant under the adjoint action at random group elements.
bool is_ad_invariant(const LieGroup& group, const Eigen::MatrixXd& k0, RngStream& rng,
                     double tol = 1e-10, int trials = 32);

/// Assembles k(U, V) = h(pi_* U, pi_* V) + k0(omega(U), omega(V)) on the
/// total-space charts. Rejects a k0 that is not positive definite and
/// Ad-invariant. Built-in scenarios carry hand-written closures for speed;
/// this generic field is their cross-check and the public entry point.
std::shared_ptr<MatrixFieldOnCharts> kaluza_klein_metric(
    std::shared_ptr<const PrincipalBundle> bundle, std::shared_ptr<const MatrixFieldOnCharts> base_metric,
    std::shared_ptr<const MatrixFieldOnCharts> omega, const Eigen::MatrixXd& k0, RngStream& rng);

}  // namespace fiberlab
