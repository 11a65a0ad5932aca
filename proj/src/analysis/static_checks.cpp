#include "fiberlab/analysis/static_checks.hpp"

namespace fiberlab {

namespace {
Eigen::VectorXd random_vec(RngStream& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = 2.0 * rng.next_uniform() - 1.0;
  return v;
}
}  // namespace

ResidualReport kk_table_checks(const Scenario& sc, const FundamentalTensors& ft,
                               const std::vector<ChartPoint>& samples, RngStream& rng) {
  const int dg = sc.group->dim();
  const int dm = sc.base->dim();
  const int n = sc.total->dim();
  ResidualReport rep;
  rep.rows = {{"nabla_omega(B*,X^h)", 0.0},
              {"nabla_omega(X^h,B*)", 0.0},
              {"nabla_omega(B*,C*) + (1/2)[B,C]", 0.0},
              {"nabla_omega(X^h,Y^h) + omega(A_{X^h}Y^h)", 0.0},
              {"T", 0.0},
              {"A_{X^h}X^h", 0.0},
              {"sym nabla_omega", 0.0}};
  auto track = [&rep](int row, const Eigen::VectorXd& r) {
    rep.rows[static_cast<std::size_t>(row)].residual =
        std::max(rep.rows[static_cast<std::size_t>(row)].residual, r.cwiseAbs().maxCoeff());
  };
  for (const ChartPoint& p : samples) {
    const Eigen::VectorXd B = random_vec(rng, dg), C = random_vec(rng, dg);
    const Eigen::VectorXd X = random_vec(rng, dm), Y = random_vec(rng, dm);
    const Eigen::MatrixXd Sig = sc.bundle->sigma(p.chart, p.x);
    const Eigen::MatrixXd lift = sc.form->horizontal_lift_matrix(p);
    const Eigen::VectorXd Bs = Sig * B, Cs = Sig * C, Xh = lift * X, Yh = lift * Y;
    track(0, ft.nabla_omega(p, Bs, Xh));
    track(1, ft.nabla_omega(p, Xh, Bs));
    track(2, ft.nabla_omega(p, Bs, Cs) + 0.5 * sc.group->bracket(B, C));
    track(3, ft.nabla_omega(p, Xh, Yh) + sc.form->apply(p.chart, p.x, ft.tensor_A(p, Xh, Yh)));
    const Eigen::VectorXd u = random_vec(rng, n), v = random_vec(rng, n);
    track(4, ft.tensor_T(p, u, v));
    track(5, ft.tensor_A(p, Xh, Xh));
    track(6, ft.nabla_omega_sym(p, u, v));
  }
  return rep;
}

ResidualReport frame_bundle_checks(const Scenario& sc, const FundamentalTensors& ft,
                                   bool check_omega_square, const std::vector<ChartPoint>& samples,
                                   RngStream& rng) {
  const int n = sc.total->dim();
  ResidualReport rep;
  rep.rows = {{"T", 0.0}, {"pi_* A", 0.0}};
  if (check_omega_square) rep.rows.push_back({"sym nabla_omega + omega.omega", 0.0});
  for (const ChartPoint& p : samples) {
    const Eigen::VectorXd u = random_vec(rng, n), v = random_vec(rng, n);
    rep.rows[0].residual =
        std::max(rep.rows[0].residual, ft.tensor_T(p, u, v).cwiseAbs().maxCoeff());
    const auto [bc, Jpi] = sc.bundle->projection().differential(p);
    (void)bc;
    rep.rows[1].residual =
        std::max(rep.rows[1].residual, (Jpi * ft.tensor_A(p, u, v)).cwiseAbs().maxCoeff());
    if (check_omega_square) {
      const Eigen::VectorXd wu = sc.form->apply(p.chart, p.x, u);
      const Eigen::VectorXd wv = sc.form->apply(p.chart, p.x, v);
      const Eigen::MatrixXcd MU = sc.group->algebra_matrix(wu);
      const Eigen::MatrixXcd MV = sc.group->algebra_matrix(wv);
      const Eigen::VectorXd prod = sc.group->algebra_coeffs(0.5 * (MU * MV + MV * MU));
      rep.rows[2].residual = std::max(
          rep.rows[2].residual, (ft.nabla_omega_sym(p, u, v) + prod).cwiseAbs().maxCoeff());
    }
  }
  return rep;
}

}  // namespace fiberlab
