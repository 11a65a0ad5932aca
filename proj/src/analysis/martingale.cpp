#include "fiberlab/analysis/martingale.hpp"

namespace fiberlab {

namespace {

/// Constant coordinate covector in whatever chart a step is in.
class CoordinateCovector final : public MatrixFieldOnCharts {
public:
  CoordinateCovector(int dim, int index) : dim_(dim), index_(index) {}
  int rows() const override { return 1; }
  int cols() const override { return dim_; }
  Eigen::MatrixXd value(int, const Eigen::VectorXd&) const override {
    Eigen::MatrixXd row = Eigen::MatrixXd::Zero(1, dim_);
    row(0, index_) = 1.0;
    return row;
  }

private:
  int dim_, index_;
};

}  // namespace

CharacterizationProcesses characterization_processes(const Scenario& sc, const FundamentalTensors& ft,
                                                     const AffineConnection& nablaM, const PathSample& Y) {
  CharacterizationProcesses out;
  const int dg = sc.group->dim();
  const int dm = sc.base->dim();

  const auto omega_strat = strat_integral_vec(
      [&sc](const ChartPoint& p, const Eigen::VectorXd& d) { return sc.form->apply(p.chart, p.x, d); }, Y);
  const auto omega_quad = quadratic_integral_vec(
      [&ft](const ChartPoint& p, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
        return ft.nabla_omega(p, u, v);
      },
      Y);
  out.z1.assign(static_cast<std::size_t>(dg), std::vector<double>(omega_strat.size(), 0.0));
  for (std::size_t k = 0; k < omega_strat.size(); ++k)
    for (int a = 0; a < dg; ++a)
      out.z1[static_cast<std::size_t>(a)][k] = omega_strat[k][a] - 0.5 * omega_quad[k][a];

  const PathSample base = project_path(sc, Y);
  out.z2.reserve(static_cast<std::size_t>(dm));
  for (int i = 0; i < dm; ++i) {
    const CoordinateCovector alpha(dm, i);
    std::vector<double> ito = ito_integral(alpha, nablaM, base);
    // quadratic correction on the bundle path, projected into the chart the
    // base path uses for the same step
    std::vector<double> corr(ito.size(), 0.0);
    for (int k = 0; k < Y.steps(); ++k) {
      const PathStep& s = Y.step(k);
      const PathStep& bs = base.step(k);
      const Eigen::VectorXd d = s.x1 - s.x0;
      const Eigen::MatrixXd Jpi =
          sc.bundle->projection().differential_into(ChartPoint{s.chart, s.x0}, bs.chart);
      const Eigen::VectorXd pushed = Jpi * ft.correction(ChartPoint{s.chart, s.x0}, d, d);
      corr[static_cast<std::size_t>(k) + 1] = corr[static_cast<std::size_t>(k)] + pushed[i];
    }
    std::vector<double> z(ito.size());
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = ito[k] + 0.5 * corr[k];
    out.z2.push_back(std::move(z));
  }
  return out;
}

MartingaleVerdict martingale_verdict(const Scenario& sc, const FundamentalTensors& ft,
                                     const AffineConnection& nablaM, const PathEnsemble& ens,
                                     const DriftConfig& config) {
  const int dg = sc.group->dim();
  const int dm = sc.base->dim();
  std::vector<std::vector<std::vector<double>>> z1(static_cast<std::size_t>(dg));
  std::vector<std::vector<std::vector<double>>> z2(static_cast<std::size_t>(dm));
  for (int i = 0; i < ens.size(); ++i) {
    CharacterizationProcesses pr = characterization_processes(sc, ft, nablaM, ens.path(i));
    for (int a = 0; a < dg; ++a) z1[static_cast<std::size_t>(a)].push_back(std::move(pr.z1[static_cast<std::size_t>(a)]));
    for (int j = 0; j < dm; ++j) z2[static_cast<std::size_t>(j)].push_back(std::move(pr.z2[static_cast<std::size_t>(j)]));
  }
  MartingaleVerdict verdict;
  for (int a = 0; a < dg; ++a)
    verdict.reports.push_back(drift_test(z1[static_cast<std::size_t>(a)], ens.grid().dt, config,
                                         "Z1[" + std::to_string(a) + "]"));
  for (int j = 0; j < dm; ++j)
    verdict.reports.push_back(drift_test(z2[static_cast<std::size_t>(j)], ens.grid().dt, config,
                                         "Z2[dx" + std::to_string(j) + "]"));
  return verdict;
}

MartingaleVerdict kk_simplified_verdict(const Scenario& sc, const FundamentalTensors& ft,
                                        const AffineConnection& nablaM, const PathEnsemble& ens,
                                        const DriftConfig& config) {
  const int dg = sc.group->dim();
  const int dm = sc.base->dim();
  std::vector<std::vector<std::vector<double>>> z1(static_cast<std::size_t>(dg));
  std::vector<std::vector<std::vector<double>>> z2(static_cast<std::size_t>(dm));
  for (int i = 0; i < ens.size(); ++i) {
    const PathSample& Y = ens.path(i);
    const auto omega_strat = strat_integral_vec(
        [&sc](const ChartPoint& p, const Eigen::VectorXd& d) { return sc.form->apply(p.chart, p.x, d); },
        Y);
    for (int a = 0; a < dg; ++a) {
      std::vector<double> z(omega_strat.size());
      for (std::size_t k = 0; k < z.size(); ++k) z[k] = omega_strat[k][a];
      z1[static_cast<std::size_t>(a)].push_back(std::move(z));
    }
    const PathSample base = project_path(sc, Y);
    for (int j = 0; j < dm; ++j) {
      const CoordinateCovector alpha(dm, j);
      std::vector<double> ito = ito_integral(alpha, nablaM, base);
      std::vector<double> corr(ito.size(), 0.0);
      for (int k = 0; k < Y.steps(); ++k) {
        const PathStep& s = Y.step(k);
        const PathStep& bs = base.step(k);
        const Eigen::VectorXd d = s.x1 - s.x0;
        const Eigen::MatrixXd Jpi =
            sc.bundle->projection().differential_into(ChartPoint{s.chart, s.x0}, bs.chart);
        const Eigen::VectorXd pushed = Jpi * ft.tensor_A(ChartPoint{s.chart, s.x0}, d, d);
        corr[static_cast<std::size_t>(k) + 1] = corr[static_cast<std::size_t>(k)] + pushed[j];
      }
      std::vector<double> z(ito.size());
      for (std::size_t k = 0; k < z.size(); ++k) z[k] = ito[k] - 0.5 * corr[k];
      z2[static_cast<std::size_t>(j)].push_back(std::move(z));
    }
  }
  MartingaleVerdict verdict;
  for (int a = 0; a < dg; ++a)
    verdict.reports.push_back(drift_test(z1[static_cast<std::size_t>(a)], ens.grid().dt, config,
                                         "omega-strat[" + std::to_string(a) + "]"));
  for (int j = 0; j < dm; ++j)
    verdict.reports.push_back(drift_test(z2[static_cast<std::size_t>(j)], ens.grid().dt, config,
                                         "A-corrected[dx" + std::to_string(j) + "]"));
  return verdict;
}

MartingaleVerdict direct_total_space_verdict(const Scenario& sc, const AffineConnection& nablaP,
                                             const PathEnsemble& ens, const DriftConfig& config) {
  const int n = sc.total->dim();
  MartingaleVerdict verdict;
  for (int mu = 0; mu < n; ++mu) {
    const CoordinateCovector alpha(n, mu);
    std::vector<std::vector<double>> Z;
    Z.reserve(static_cast<std::size_t>(ens.size()));
    for (int i = 0; i < ens.size(); ++i) Z.push_back(ito_integral(alpha, nablaP, ens.path(i)));
    verdict.reports.push_back(drift_test(Z, ens.grid().dt, config, "ito[dz" + std::to_string(mu) + "]"));
  }
  return verdict;
}

MartingaleVerdict base_martingale_verdict(const Scenario& sc, const AffineConnection& nablaM,
                                          const PathEnsemble& ens, const DriftConfig& config) {
  const int dm = sc.base->dim();
  MartingaleVerdict verdict;
  for (int j = 0; j < dm; ++j) {
    const CoordinateCovector alpha(dm, j);
    std::vector<std::vector<double>> Z;
    Z.reserve(static_cast<std::size_t>(ens.size()));
    for (int i = 0; i < ens.size(); ++i)
      Z.push_back(ito_integral(alpha, nablaM, project_path(sc, ens.path(i))));
    verdict.reports.push_back(drift_test(Z, ens.grid().dt, config, "base-ito[dx" + std::to_string(j) + "]"));
  }
  return verdict;
}

MartingaleVerdict fiber_martingale_verdict(const Scenario& sc, const PathEnsemble& ens,
                                           const DriftConfig& config) {
  const int dg = sc.group->dim();
  std::vector<std::vector<std::vector<double>>> Z(static_cast<std::size_t>(dg));
  for (int i = 0; i < ens.size(); ++i) {
    const SplitResult split = arnaudon_paycha_split(sc, ens.path(i));
    for (int a = 0; a < dg; ++a) {
      std::vector<double> z(split.fiber_log.size());
      for (std::size_t k = 0; k < z.size(); ++k) z[k] = split.fiber_log[k][a];
      Z[static_cast<std::size_t>(a)].push_back(std::move(z));
    }
  }
  MartingaleVerdict verdict;
  for (int a = 0; a < dg; ++a)
    verdict.reports.push_back(drift_test(Z[static_cast<std::size_t>(a)], ens.grid().dt, config,
                                         "fiber-log[" + std::to_string(a) + "]"));
  return verdict;
}

}  // namespace fiberlab
