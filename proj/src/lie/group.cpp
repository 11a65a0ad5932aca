#include "fiberlab/lie/group.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace fiberlab {

namespace {
double frob_re(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a.adjoint() * b).trace().real();
}
}  // namespace

LieGroup::LieGroup(std::string name, int matrix_size, std::vector<Eigen::MatrixXcd> basis)
    : name_(std::move(name)), n_(matrix_size), basis_(std::move(basis)) {
  const int d = dim();
  Eigen::MatrixXd gram(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) gram(a, b) = frob_re(basis_[static_cast<std::size_t>(a)], basis_[static_cast<std::size_t>(b)]);
  gram_inverse_ = gram.inverse();
  structure_.assign(static_cast<std::size_t>(d), Eigen::MatrixXd::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Eigen::MatrixXcd comm = basis_[static_cast<std::size_t>(a)] * basis_[static_cast<std::size_t>(b)] -
                                    basis_[static_cast<std::size_t>(b)] * basis_[static_cast<std::size_t>(a)];
      const Eigen::VectorXd c = algebra_coeffs(comm);
      for (int k = 0; k < d; ++k) structure_[static_cast<std::size_t>(k)](a, b) = c[k];
    }
}

Eigen::MatrixXcd LieGroup::algebra_matrix(const Eigen::VectorXd& coeffs) const {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n_, n_);
  for (int a = 0; a < dim(); ++a) A += coeffs[a] * basis_[static_cast<std::size_t>(a)];
  return A;
}

Eigen::VectorXd LieGroup::algebra_coeffs(const Eigen::MatrixXcd& A) const {
  Eigen::VectorXd rhs(dim());
  for (int a = 0; a < dim(); ++a) rhs[a] = frob_re(basis_[static_cast<std::size_t>(a)], A);
  return gram_inverse_ * rhs;
}

Eigen::VectorXd LieGroup::bracket(const Eigen::VectorXd& B, const Eigen::VectorXd& C) const {
  Eigen::VectorXd out(dim());
  for (int k = 0; k < dim(); ++k) out[k] = B.dot(structure_[static_cast<std::size_t>(k)] * C);
  return out;
}

Eigen::MatrixXcd LieGroup::exp(const Eigen::MatrixXcd& A) const { return A.exp(); }

Eigen::MatrixXcd LieGroup::log(const Eigen::MatrixXcd& g) const {
  const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(g, false).eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i].real() <= 0.0 && std::abs(ev[i].imag()) < 1e-12)
      throw ConditioningError(name_ + ": logarithm outside the principal branch");
  }
  return g.log();
}

Eigen::VectorXd LieGroup::adjoint(const Eigen::MatrixXcd& g, const Eigen::VectorXd& B) const {
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(g);
  if (!lu.isInvertible()) throw ConditioningError(name_ + ": adjoint of a singular element");
  return algebra_coeffs(g * algebra_matrix(B) * lu.inverse());
}

Eigen::MatrixXd LieGroup::adjoint_matrix(const Eigen::MatrixXcd& g) const {
  Eigen::MatrixXd ad(dim(), dim());
  for (int a = 0; a < dim(); ++a) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim());
    e[a] = 1.0;
    ad.col(a) = adjoint(g, e);
  }
  return ad;
}

Eigen::MatrixXcd LieGroup::sample(RngStream& rng, double spread) const {
  Eigen::VectorXd c(dim());
  for (int a = 0; a < dim(); ++a) c[a] = spread * (2.0 * rng.next_uniform() - 1.0);
  return exp_coeffs(c);
}

std::shared_ptr<LieGroup> make_u1() {
  Eigen::MatrixXcd e(1, 1);
  e(0, 0) = std::complex<double>(0.0, 1.0);
  return std::make_shared<LieGroup>("U(1)", 1, std::vector<Eigen::MatrixXcd>{e});
}

std::shared_ptr<LieGroup> make_so2() {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(2, 2);
  e(0, 1) = -1.0;
  e(1, 0) = 1.0;
  return std::make_shared<LieGroup>("SO(2)", 2, std::vector<Eigen::MatrixXcd>{e});
}

std::shared_ptr<LieGroup> make_so3() {
  // (L_a)_{bc} = -eps_{abc}: [L1, L2] = L3 cyclically
  std::vector<Eigen::MatrixXcd> basis(3, Eigen::MatrixXcd::Zero(3, 3));
  basis[0](1, 2) = -1.0;
  basis[0](2, 1) = 1.0;
  basis[1](0, 2) = 1.0;
  basis[1](2, 0) = -1.0;
  basis[2](0, 1) = -1.0;
  basis[2](1, 0) = 1.0;
  return std::make_shared<LieGroup>("SO(3)", 3, basis);
}

std::shared_ptr<LieGroup> make_su2() {
  // e_a = -(i/2) sigma_a: [e1, e2] = e3 cyclically; matches quaternion units/2
  const std::complex<double> I(0.0, 1.0);
  std::vector<Eigen::MatrixXcd> basis(3, Eigen::MatrixXcd::Zero(2, 2));
  basis[0](0, 1) = -0.5 * I;
  basis[0](1, 0) = -0.5 * I;
  basis[1](0, 1) = -0.5;
  basis[1](1, 0) = 0.5;
  basis[2](0, 0) = -0.5 * I;
  basis[2](1, 1) = 0.5 * I;
  return std::make_shared<LieGroup>("SU(2)", 2, basis);
}

std::shared_ptr<LieGroup> make_gl2() {
  std::vector<Eigen::MatrixXcd> basis(4, Eigen::MatrixXcd::Zero(2, 2));
  basis[0](0, 0) = 1.0;
  basis[1](0, 1) = 1.0;
  basis[2](1, 0) = 1.0;
  basis[3](1, 1) = 1.0;
  return std::make_shared<LieGroup>("GL(2)", 2, basis);
}

}  // namespace fiberlab
