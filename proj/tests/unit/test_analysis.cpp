#include <doctest.h>

#include "fiberlab/analysis/harmonic.hpp"
#include "fiberlab/analysis/static_checks.hpp"
#include "fiberlab/geometry/builtins.hpp"

using namespace fiberlab;

TEST_SUITE_BEGIN("analysis");

TEST_CASE("drift test: gaussian sums pass, pure drift is rejected") {
  const int N = 256, K = 400;
  const double dt = 1e-3;
  RngStream rng(61, 0);
  std::vector<std::vector<double>> noise(N), drift(N);
  for (int i = 0; i < N; ++i) {
    noise[static_cast<std::size_t>(i)].assign(K + 1, 0.0);
    drift[static_cast<std::size_t>(i)].assign(K + 1, 0.0);
    for (int k = 1; k <= K; ++k) {
      noise[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          noise[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - 1)] +
          std::sqrt(dt) * rng.next_normal();
      drift[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = k * dt;
    }
  }
  DriftConfig cfg;
  const DriftReport good = drift_test(noise, dt, cfg, "gaussian");
  CHECK(good.consistent);
  const DriftReport bad = drift_test(drift, dt, cfg, "ramp");
  CHECK_FALSE(bad.consistent);
  CHECK(bad.global_mean == doctest::Approx(K * dt).epsilon(1e-12));
}

TEST_CASE("drift test refuses tiny ensembles") {
  std::vector<std::vector<double>> Z(10, std::vector<double>(5, 0.0));
  DriftConfig cfg;
  CHECK_THROWS_AS(drift_test(Z, 1e-3, cfg, "small"), ConfigError);
}

TEST_CASE("flat-plane ito integral of dx1 is a true martingale") {
  auto plane = make_euclidean_space(2);
  LeviCivitaConnection lc(plane.get());
  const TimeGrid grid = TimeGrid::from_horizon(0.5, 1e-3);
  const PathEnsemble ens = brownian_ensemble(
      *plane, plane->metric(), lc, [](int) { return ChartPoint{0, Eigen::VectorXd::Zero(2)}; }, grid,
      500, 63);
  FunctionalMatrixField dx1([](int, const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(1, 2); },
                            1, 2);
  std::vector<std::vector<double>> Z;
  for (int i = 0; i < ens.size(); ++i) Z.push_back(ito_integral(dx1, lc, ens.path(i)));
  DriftConfig cfg;
  CHECK(drift_test(Z, grid.dt, cfg, "flat-ito").consistent);
}

TEST_CASE("characterization: horizontal brownian ensemble is consistent, drift injection is not") {
  auto sc = build_scenario("s1-abelian-kk", {});
  const TimeGrid grid = TimeGrid::from_horizon(0.5, 2e-3);
  auto good_drivers = make_drivers(sc, {parse_driver_spec("horizontal-brownian", *sc)});
  const PathEnsemble good = simulate_ensemble(
      *sc->total, good_drivers, [&sc](int) { return sc->default_start; }, grid, 256, 65);
  DriftConfig cfg;
  const MartingaleVerdict vgood = martingale_verdict(*sc, *sc->tensors, *sc->nablaM, good, cfg);
  CHECK(vgood.consistent());
  const MartingaleVerdict vkk = kk_simplified_verdict(*sc, *sc->tensors, *sc->nablaM, good, cfg);
  CHECK(vkk.consistent());
  const MartingaleVerdict vdir = direct_total_space_verdict(*sc, *sc->nablaP, good, cfg);
  CHECK(vdir.consistent());

  auto bad_drivers = make_drivers(sc, {parse_driver_spec("horizontal-brownian", *sc),
                                       parse_driver_spec("horizontal-drift:0.0,0.5", *sc)});
  const PathEnsemble bad = simulate_ensemble(
      *sc->total, bad_drivers, [&sc](int) { return sc->default_start; }, grid, 256, 66);
  CHECK_FALSE(martingale_verdict(*sc, *sc->tensors, *sc->nablaM, bad, cfg).consistent());
  CHECK_FALSE(direct_total_space_verdict(*sc, *sc->nablaP, bad, cfg).consistent());
}

TEST_CASE("vertical constant flow: deterministic drift and the analytic value") {
  auto sc = build_scenario("s1-abelian-kk", {});
  const TimeGrid grid = TimeGrid::from_horizon(0.5, 2e-3);
  const double b = 0.7;
  auto drivers = make_drivers(sc, {parse_driver_spec("vertical-drift:" + std::to_string(b), *sc)});
  const PathEnsemble ens = simulate_ensemble(
      *sc->total, drivers, [&sc](int) { return sc->default_start; }, grid, 128, 67);
  DriftConfig cfg;
  cfg.min_paths = 100;
  const MartingaleVerdict v = martingale_verdict(*sc, *sc->tensors, *sc->nablaM, ens, cfg);
  CHECK_FALSE(v.consistent());
  // Z1 drift per unit time equals b exactly (the quadratic term vanishes in
  // the abelian case): Z1_T = b T
  CHECK(v.reports[0].global_mean == doctest::Approx(b * grid.horizon()).epsilon(1e-10));
}

TEST_CASE("fiber exponential of a martingale ensemble is drift-free in exponential coordinates") {
  auto sc = build_scenario("s1-abelian-kk", {});
  const TimeGrid grid = TimeGrid::from_horizon(0.5, 2e-3);
  auto drivers = make_drivers(sc, {parse_driver_spec("horizontal-brownian", *sc),
                                   parse_driver_spec("vertical-brownian", *sc)});
  const PathEnsemble ens = simulate_ensemble(
      *sc->total, drivers, [&sc](int) { return sc->default_start; }, grid, 200, 68);
  DriftConfig cfg;
  CHECK(fiber_martingale_verdict(*sc, ens, cfg).consistent());
}

TEST_CASE("affinity transfer on the frame bundle: bundle test implies base test") {
  auto sc = build_scenario("s3-frame-flat", {});
  const TimeGrid grid = TimeGrid::from_horizon(0.4, 2e-3);
  std::vector<Driver> drivers;
  for (int a = 0; a < 2; ++a) {
    Driver d;
    d.kind = Driver::Kind::Brownian;
    d.field = [sc, a](const ChartPoint& p) -> Eigen::VectorXd {
      Eigen::VectorXd col(2);
      for (int i = 0; i < 2; ++i) col[i] = p.x[2 + i * 2 + a];
      return sc->form->horizontal_lift(p, col);
    };
    drivers.push_back(std::move(d));
  }
  const PathEnsemble ens = simulate_ensemble(
      *sc->total, drivers, [&sc](int) { return sc->default_start; }, grid, 200, 69);
  DriftConfig cfg;
  CHECK(direct_total_space_verdict(*sc, *sc->nablaP, ens, cfg).consistent());
  CHECK(base_martingale_verdict(*sc, *sc->nablaM, ens, cfg).consistent());
}

TEST_CASE("type-1 calibration smoke: five true-martingale ensembles all pass") {
  auto plane = make_euclidean_space(2);
  LeviCivitaConnection lc(plane.get());
  const TimeGrid grid = TimeGrid::from_horizon(0.4, 2e-3);
  FunctionalMatrixField dx1([](int, const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(1, 2); },
                            1, 2);
  DriftConfig cfg;
  for (int e = 0; e < 5; ++e) {
    const PathEnsemble ens = brownian_ensemble(
        *plane, plane->metric(), lc, [](int) { return ChartPoint{0, Eigen::VectorXd::Zero(2)}; }, grid,
        256, 700 + static_cast<std::uint64_t>(e));
    std::vector<std::vector<double>> Z;
    for (int i = 0; i < ens.size(); ++i) Z.push_back(ito_integral(dx1, lc, ens.path(i)));
    CHECK(drift_test(Z, grid.dt, cfg, "calibration").consistent);
  }
}

TEST_CASE("harmonic residuals: geodesics pass, vertical flows pass, controls fail") {
  for (const std::string id : {"s1-abelian-kk", "s2-hopf"}) {
    CAPTURE(id);
    auto sc = build_scenario(id, {});
    auto interval = make_interval(-0.1, 1.0);
    LeviCivitaConnection lci(interval.get());
    Eigen::VectorXd vel = sc->form->horizontal_lift(sc->default_start, Eigen::Vector2d(1, 0));
    vel += 0.3 * sc->bundle->fundamental(sc->default_start, Eigen::VectorXd::Ones(sc->group->dim()));
    GeodesicCurveMap geo(interval.get(), sc->tensors->connection(), sc->default_start, vel, -0.1, 1.0);
    std::vector<ChartPoint> grid;
    for (int i = 0; i < 7; ++i) {
      Eigen::VectorXd t(1);
      t << 0.05 + 0.12 * i;
      grid.push_back({0, t});
    }
    const HarmonicReport rep =
        harmonic_conditions(*sc, *sc->tensors, geo, interval->metric(), lci, *sc->nablaM, grid);
    CHECK(rep.holes == 0);
    CHECK(rep.r1_max() < 1e-5);
    CHECK(rep.r2_max() < 1e-5);

    // vertical one-parameter flow t -> p exp(tB)
    FunctionalMap flow(interval.get(), sc->total.get(), [sc](const ChartPoint& t) {
      const Eigen::MatrixXcd g =
          sc->group->exp_coeffs(Eigen::VectorXd::Constant(sc->group->dim(), t.x[0]));
      return sc->bundle->action().act(sc->default_start, g);
    });
    const HarmonicReport vrep =
        harmonic_conditions(*sc, *sc->tensors, flow, interval->metric(), lci, *sc->nablaM, grid);
    CHECK(vrep.r1_max() < 1e-4);
    CHECK(vrep.r2_max() < 1e-4);

    // bent control curve
    FunctionalMap bad(interval.get(), sc->total.get(), [sc](const ChartPoint& t) {
      ChartPoint p = sc->default_start;
      const Eigen::VectorXd v = sc->form->horizontal_lift(p, Eigen::Vector2d(1, 0));
      p.x += t.x[0] * v + 0.35 * t.x[0] * t.x[0] * Eigen::VectorXd::Ones(p.x.size());
      return p;
    });
    const HarmonicReport brep =
        harmonic_conditions(*sc, *sc->tensors, bad, interval->metric(), lci, *sc->nablaM, grid);
    CHECK(brep.r2_max() > 1e-2);
  }
}

TEST_SUITE_END();
