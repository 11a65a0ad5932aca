#include <doctest.h>

#include "fiberlab/lie/group.hpp"

using namespace fiberlab;

namespace {

double dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

std::vector<std::shared_ptr<LieGroup>> builtins() {
  return {make_u1(), make_so2(), make_so3(), make_su2(), make_gl2()};
}

}  // namespace

TEST_SUITE_BEGIN("lie");

TEST_CASE("group axioms hold at random samples") {
  for (const auto& G : builtins()) {
    CAPTURE(G->name());
    RngStream rng(11, 3);
    for (int t = 0; t < 1000; ++t) {
      const auto a = G->sample(rng), b = G->sample(rng), c = G->sample(rng);
      CHECK(dist((a * b) * c, a * (b * c)) < 1e-12);
      CHECK(dist(a * G->identity(), a) < 1e-14);
      CHECK(dist(a * a.inverse(), G->identity()) < 1e-11);
    }
  }
}

TEST_CASE("exp/log round-trip near the identity") {
  for (const auto& G : builtins()) {
    CAPTURE(G->name());
    RngStream rng(5, 1);
    for (int t = 0; t < 200; ++t) {
      const Eigen::MatrixXcd g = G->sample(rng, 0.6);
      CHECK(dist(G->exp(G->log(g)), g) < 1e-10);
    }
  }
}

TEST_CASE("structure constants reproduce the brackets and satisfy Jacobi") {
  for (const auto& G : builtins()) {
    CAPTURE(G->name());
    const int d = G->dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const Eigen::MatrixXcd lhs = G->basis(a) * G->basis(b) - G->basis(b) * G->basis(a);
        const Eigen::VectorXd c =
            G->bracket(Eigen::VectorXd::Unit(d, a), Eigen::VectorXd::Unit(d, b));
        CHECK(dist(lhs, G->algebra_matrix(c)) < 1e-12);
      }
    RngStream rng(3, 9);
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXd A(d), B(d), C(d);
      for (int i = 0; i < d; ++i) {
        A[i] = rng.next_uniform() - 0.5;
        B[i] = rng.next_uniform() - 0.5;
        C[i] = rng.next_uniform() - 0.5;
      }
      const Eigen::VectorXd jac = G->bracket(A, G->bracket(B, C)) + G->bracket(B, G->bracket(C, A)) +
                                  G->bracket(C, G->bracket(A, B));
      CHECK(jac.cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("bracket basics") {
  auto su2 = make_su2();
  Eigen::Vector3d e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
  CHECK((su2->bracket(e1, e1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((su2->bracket(e1, e2) - e3).cwiseAbs().maxCoeff() < 1e-14);
  auto so3 = make_so3();
  CHECK((so3->bracket(e1, e2) - e3).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((so3->bracket(e2, e3) - e1).cwiseAbs().maxCoeff() < 1e-14);
  auto u1 = make_u1();
  CHECK(u1->bracket(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adjoint: identity, abelian, and the series oracle on SO(3)") {
  auto so3 = make_so3();
  Eigen::Vector3d B(0.4, -0.2, 0.9);
  CHECK((so3->adjoint(so3->identity(), B) - B).cwiseAbs().maxCoeff() < 1e-14);

  auto u1 = make_u1();
  RngStream rng(8, 2);
  const Eigen::MatrixXcd g = u1->sample(rng);
  CHECK((u1->adjoint(g, Eigen::VectorXd::Ones(1)) - Eigen::VectorXd::Ones(1)).cwiseAbs().maxCoeff() <
        1e-14);

  // Ad_{exp(tA)} B = sum t^k/k! ad_A^k B, truncated at k = 20
  Eigen::Vector3d A(0.3, 0.7, -0.5);
  const double t = 0.3;
  Eigen::VectorXd series = B, term = B;
  for (int k = 1; k <= 20; ++k) {
    term = (t / k) * so3->bracket(A, term);
    series += term;
  }
  const Eigen::VectorXd direct = so3->adjoint(so3->exp_coeffs(t * A), B);
  CHECK((direct - series).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("adjoint is a homomorphism") {
  for (const auto& G : builtins()) {
    CAPTURE(G->name());
    RngStream rng(21, 4);
    for (int t = 0; t < 50; ++t) {
      const auto g = G->sample(rng), h = G->sample(rng);
      const Eigen::MatrixXd lhs = G->adjoint_matrix(g * h);
      const Eigen::MatrixXd rhs = G->adjoint_matrix(g) * G->adjoint_matrix(h);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("exponential special values") {
  auto so3 = make_so3();
  CHECK(dist(so3->exp(Eigen::MatrixXcd::Zero(3, 3)), so3->identity()) == 0.0);
  // quarter turn about z maps e_x to e_y (Rodrigues closed form)
  const Eigen::MatrixXcd R = so3->exp_coeffs(Eigen::Vector3d(0, 0, M_PI / 2));
  Eigen::VectorXcd ex(3);
  ex << 1, 0, 0;
  const Eigen::VectorXcd out = R * ex;
  CHECK(std::abs(out[0]) < 1e-14);
  CHECK(std::abs(out[1] - 1.0) < 1e-14);

  auto u1 = make_u1();
  const Eigen::MatrixXcd full_turn = u1->exp_coeffs(Eigen::VectorXd::Constant(1, 2.0 * M_PI));
  CHECK(dist(full_turn, u1->identity()) < 1e-13);
  const Eigen::MatrixXcd half = u1->exp_coeffs(Eigen::VectorXd::Constant(1, 0.7));
  CHECK(std::arg(half(0, 0)) == doctest::Approx(0.7));
}

TEST_CASE("exp is additive on commuting arguments") {
  auto gl2 = make_gl2();
  Eigen::VectorXd A(4), B(4);
  A << 0.3, 0.0, 0.0, -0.2;  // diagonal
  B << -0.1, 0.0, 0.0, 0.4;  // diagonal, commutes with A
  CHECK(dist(gl2->exp_coeffs(A + B), gl2->exp_coeffs(A) * gl2->exp_coeffs(B)) < 1e-10);
}

TEST_CASE("gl2 log rejects spectra on the negative axis") {
  auto gl2 = make_gl2();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  m(0, 0) = -1.0;
  CHECK_THROWS_AS(gl2->log(m), ConditioningError);
}

TEST_SUITE_END();
