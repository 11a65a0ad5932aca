#include "fiberlab/stochastic/exponential.hpp"

namespace fiberlab {

std::vector<Eigen::MatrixXcd> stochastic_exponential(const Scenario& sc, const PathSample& Y) {
  const LieGroup& G = *sc.group;
  std::vector<Eigen::MatrixXcd> V;
  V.reserve(static_cast<std::size_t>(Y.steps()) + 1);
  V.push_back(G.identity());
  for (int k = 0; k < Y.steps(); ++k) {
    const PathStep& s = Y.step(k);
    const Eigen::VectorXd dZ =
        sc.form->apply(s.chart, 0.5 * (s.x0 + s.x1), s.x1 - s.x0);
    V.push_back(V.back() * G.exp_coeffs(dZ));
  }
  return V;
}

SplitResult arnaudon_paycha_split(const Scenario& sc, const PathSample& Y) {
  const LieGroup& G = *sc.group;
  SplitResult res;
  res.fiber = stochastic_exponential(sc, Y);
  const int K = Y.steps();

  // Ytilde_k = Y_k . V_k^{-1}
  std::vector<ChartPoint> tilde(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    const Eigen::MatrixXcd Vinv = res.fiber[static_cast<std::size_t>(k)].inverse();
    tilde[static_cast<std::size_t>(k)] = sc.bundle->action().act(Y.point(k), Vinv);
  }
  PathSample H(sc.total.get(), Y.grid());
  H.set_start(tilde[0]);
  for (int k = 0; k < K; ++k) {
    PathStep s;
    s.chart = tilde[static_cast<std::size_t>(k)].chart;
    s.x0 = tilde[static_cast<std::size_t>(k)].x;
    s.x1 = sc.total->to_chart(tilde[static_cast<std::size_t>(k) + 1], s.chart);
    H.mutable_steps().push_back(std::move(s));
  }
  res.horizontal = std::move(H);

  // reconstruction and horizontality diagnostics
  for (int k = 0; k <= K; ++k) {
    const ChartPoint rec = sc.bundle->action().act(res.horizontal.point(k), res.fiber[static_cast<std::size_t>(k)]);
    const ChartPoint ref = Y.point(k);
    const Eigen::VectorXd diff = sc.total->to_chart(rec, ref.chart) - ref.x;
    res.reconstruction_error = std::max(res.reconstruction_error, diff.cwiseAbs().maxCoeff());
  }
  for (int k = 0; k < K; ++k) {
    const PathStep& s = res.horizontal.step(k);
    const Eigen::VectorXd dZ = sc.form->apply(s.chart, 0.5 * (s.x0 + s.x1), s.x1 - s.x0);
    res.horizontality_defect += dZ.cwiseAbs().maxCoeff();
  }

  res.fiber_log.resize(static_cast<std::size_t>(K) + 1);
  res.fiber_log[0] = Eigen::VectorXd::Zero(G.dim());
  for (int k = 0; k < K; ++k) {
    const Eigen::MatrixXcd incr =
        res.fiber[static_cast<std::size_t>(k)].inverse() * res.fiber[static_cast<std::size_t>(k) + 1];
    res.fiber_log[static_cast<std::size_t>(k) + 1] =
        res.fiber_log[static_cast<std::size_t>(k)] + G.log_coeffs(incr);
  }
  return res;
}

}  // namespace fiberlab
