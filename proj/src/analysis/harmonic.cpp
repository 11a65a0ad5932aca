#include "fiberlab/analysis/harmonic.hpp"

namespace fiberlab {

GeodesicCurveMap::GeodesicCurveMap(const ChartedManifold* interval, const AffineConnection& conn,
                                   const ChartPoint& start, const Eigen::VectorXd& velocity, double t0,
                                   double t1, int cache_steps)
    : SmoothMap(interval, &conn.manifold()), conn_(&conn), t0_(t0) {
  dt_ = (t1 - t0) / cache_steps;
  GeodesicResult res = integrate_geodesic(conn, start, velocity, t1 - t0, cache_steps);
  nodes_ = std::move(res.points);
  velocities_ = std::move(res.velocities);
}

std::pair<ChartPoint, Eigen::VectorXd> GeodesicCurveMap::state(double t) const {
  const double s = (t - t0_) / dt_;
  int node = static_cast<int>(std::floor(s));
  node = std::max(0, std::min(node, static_cast<int>(nodes_.size()) - 1));
  const double rem = t - (t0_ + node * dt_);
  if (std::abs(rem) < 1e-300)
    return {nodes_[static_cast<std::size_t>(node)], velocities_[static_cast<std::size_t>(node)]};
  GeodesicResult res = integrate_geodesic(*conn_, nodes_[static_cast<std::size_t>(node)],
                                          velocities_[static_cast<std::size_t>(node)], rem, 4);
  return {res.points.back(), res.velocities.back()};
}

Eigen::MatrixXd GeodesicCurveMap::differential_into(const ChartPoint& p, int dst_chart) const {
  const auto [pt, vel] = state(p.x[0]);
  Eigen::VectorXd v = vel;
  if (pt.chart != dst_chart) v = target().transition_jacobian(pt.chart, dst_chart, pt.x) * v;
  Eigen::MatrixXd J(v.size(), 1);
  J.col(0) = v;
  return J;
}

HarmonicReport harmonic_conditions(const Scenario& sc, const FundamentalTensors& ft, const SmoothMap& F,
                                   const MatrixFieldOnCharts& g_src, const AffineConnection& conn_src,
                                   const AffineConnection& nablaM, const std::vector<ChartPoint>& grid) {
  HarmonicReport rep;
  const int dg = sc.group->dim();
  auto composed = ComposedMap(std::shared_ptr<const SmoothMap>(&F, [](const SmoothMap*) {}),
                              sc.bundle->projection_ptr());
  for (const ChartPoint& p : grid) {
    try {
      HarmonicSample sample;
      sample.source = p.x;
      const Eigen::MatrixXd frame = orthonormal_frame(g_src.value(p.chart, p.x));
      const auto [cF, JF] = F.differential(p);
      ChartPoint Fp = F.value(p);
      Fp.x = sc.total->to_chart(Fp, cF);
      Fp.chart = cF;

      // r1: componentwise codifferential of F*omega minus the trace term
      Eigen::VectorXd trace_term = Eigen::VectorXd::Zero(dg);
      for (int i = 0; i < frame.cols(); ++i)
        trace_term += ft.nabla_omega(Fp, JF * frame.col(i), JF * frame.col(i));
      Eigen::VectorXd r1(dg);
      for (int a = 0; a < dg; ++a) {
        FunctionalMatrixField pulled(
            [&sc, &F, a](int chart, const Eigen::VectorXd& x) -> Eigen::MatrixXd {
              const ChartPoint q{chart, x};
              const auto [c, J] = F.differential(q);
              ChartPoint Fq = F.value(q);
              Fq.x = sc.total->to_chart(Fq, c);
              const Eigen::MatrixXd W = sc.form->omega_field().value(c, Fq.x);
              return (W * J).row(a);
            },
            1, static_cast<int>(p.x.size()));
        r1[a] = codifferential(pulled, g_src, p.chart, p.x) - trace_term[a];
      }
      sample.r1 = r1.cwiseAbs().maxCoeff();

      // r2: tension of pi o F plus the projected correction trace
      const Eigen::VectorXd tau = tension_field(composed, g_src, conn_src, nablaM, p);
      const ChartPoint down = composed.value(p);
      const Eigen::MatrixXd Jpi = sc.bundle->projection().differential_into(Fp, down.chart);
      Eigen::VectorXd corr = Eigen::VectorXd::Zero(tau.size());
      for (int i = 0; i < frame.cols(); ++i)
        corr += Jpi * ft.correction(Fp, JF * frame.col(i), JF * frame.col(i));
      sample.r2 = (tau + corr).cwiseAbs().maxCoeff();
      rep.samples.push_back(std::move(sample));
    } catch (const std::exception&) {
      ++rep.holes;
    }
  }
  return rep;
}

}  // namespace fiberlab
