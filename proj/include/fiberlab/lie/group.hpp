#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "fiberlab/core/errors.hpp"
#include "fiberlab/core/rng.hpp"

namespace fiberlab {

/// Matrix Lie group with a fixed algebra basis. Algebra elements travel as
/// real coefficient vectors in that basis; group elements as complex matrices
/// (real groups embed). The basis is documented per group so that structure
/// constants are reproducible bit-for-bit.
class LieGroup {
public:
  LieGroup(std::string name, int matrix_size, std::vector<Eigen::MatrixXcd> basis);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int matrix_size() const { return n_; }
  const Eigen::MatrixXcd& basis(int a) const { return basis_[static_cast<std::size_t>(a)]; }
  Eigen::MatrixXcd identity() const { return Eigen::MatrixXcd::Identity(n_, n_); }

  Eigen::MatrixXcd algebra_matrix(const Eigen::VectorXd& coeffs) const;
  Eigen::VectorXd algebra_coeffs(const Eigen::MatrixXcd& A) const;

  /// structure[c](a,b): [e_a, e_b] = sum_c structure[c](a,b) e_c
  const std::vector<Eigen::MatrixXd>& structure_constants() const { return structure_; }
  Eigen::VectorXd bracket(const Eigen::VectorXd& B, const Eigen::VectorXd& C) const;

  Eigen::MatrixXcd exp(const Eigen::MatrixXcd& A) const;
  /// Principal logarithm; rejects spectra touching the closed negative axis.
  Eigen::MatrixXcd log(const Eigen::MatrixXcd& g) const;

  Eigen::MatrixXcd exp_coeffs(const Eigen::VectorXd& B) const { return exp(algebra_matrix(B)); }
  Eigen::VectorXd log_coeffs(const Eigen::MatrixXcd& g) const { return algebra_coeffs(log(g)); }

  /// Ad_g B = g B g^{-1} re-expressed in the basis.
  Eigen::VectorXd adjoint(const Eigen::MatrixXcd& g, const Eigen::VectorXd& B) const;
  Eigen::MatrixXd adjoint_matrix(const Eigen::MatrixXcd& g) const;

  /// Random group element: exp of a coefficient vector with entries in
  /// [-spread, spread].
  Eigen::MatrixXcd sample(RngStream& rng, double spread = 0.8) const;

private:
  std::string name_;
  int n_;
  std::vector<Eigen::MatrixXcd> basis_;
  Eigen::MatrixXd gram_inverse_;
  std::vector<Eigen::MatrixXd> structure_;
};

std::shared_ptr<LieGroup> make_u1();
std::shared_ptr<LieGroup> make_so2();
std::shared_ptr<LieGroup> make_so3();
std::shared_ptr<LieGroup> make_su2();
std::shared_ptr<LieGroup> make_gl2();

}  // namespace fiberlab
