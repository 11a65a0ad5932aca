#include <doctest.h>

#include "fiberlab/analysis/static_checks.hpp"
#include "fiberlab/bundle/scenarios.hpp"

using namespace fiberlab;

namespace {

Eigen::VectorXd rand_vec(RngStream& rng, int n, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * (2.0 * rng.next_uniform() - 1.0);
  return v;
}

Eigen::Matrix2d frame_of(const ChartPoint& p) {
  Eigen::Matrix2d m;
  m << p.x[2], p.x[3], p.x[4], p.x[5];
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("frame-bundle");

TEST_CASE("defining relations of the lift connections") {
  for (const std::string id : {"s3-frame-flat", "s3-frame-sphere"}) {
    CAPTURE(id);
    auto sc = build_scenario(id, {});
    RngStream rng(51, 1);
    for (const std::string which : {"horizontal", "canonical"}) {
      CAPTURE(which);
      auto ft = sc->tensors_for(which);
      const auto& conn = ft->connection();
      for (int t = 0; t < 12; ++t) {
        const ChartPoint p = sc->sample_total(rng);
        const Eigen::VectorXd B = rand_vec(rng, 4), C = rand_vec(rng, 4);
        // nabla_{B*} C* = (BC)*
        const Eigen::VectorXd nab = ft->cov_fundamental_field(p, sc->bundle->fundamental(p, B), C);
        const Eigen::MatrixXd BC = (sc->group->algebra_matrix(B) * sc->group->algebra_matrix(C)).real();
        const Eigen::VectorXd want = sc->bundle->fundamental(p, sc->group->algebra_coeffs(BC));
        CHECK((nab - want).cwiseAbs().maxCoeff() < 1e-8);
        // nabla_{X^h} B* = 0 and nabla_{B*} X^h = 0
        const int base_chart = sc->bundle->projection().value(p).chart;
        const Eigen::VectorXd X = rand_vec(rng, 2), Y = rand_vec(rng, 2);
        const Eigen::VectorXd Xh = sc->form->horizontal_lift(p, X);
        CHECK(ft->cov_fundamental_field(p, Xh, B).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(ft->cov_lift_field(p, sc->bundle->fundamental(p, B), X, base_chart).cwiseAbs().maxCoeff() <
              1e-7);
        // nabla_{X^h} Y^h = (nabla_X Y)^h (+ curvature correction for the canonical lift)
        const Eigen::VectorXd got = ft->cov_lift_field(p, Xh, Y, base_chart);
        const ChartPoint down = sc->bundle->projection().value(p);
        Eigen::VectorXd expect =
            sc->form->horizontal_lift(p, gamma_apply(sc->nablaM->christoffel(down.chart, down.x), X, Y));
        if (which == "canonical") {
          Eigen::Matrix2d S;
          for (int l = 0; l < 2; ++l) {
            const Eigen::VectorXd r = sc->nablaM->curvature(down.chart, down.x,
                                                            Eigen::VectorXd::Unit(2, l), X, Y);
            S(0, l) = r[0];
            S(1, l) = r[1];
          }
          const Eigen::Matrix2d pm = frame_of(p);
          const Eigen::Matrix2d conj = pm.inverse() * S * pm;
          Eigen::VectorXd coeffs(4);
          coeffs << conj(0, 0), conj(0, 1), conj(1, 0), conj(1, 1);
          expect += sc->bundle->fundamental(p, coeffs);
        }
        CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-7);
        (void)conn;
      }
    }
  }
}

TEST_CASE("flat base: canonical and horizontal lifts coincide") {
  auto sc = build_scenario("s3-frame-flat", {});
  RngStream rng(52, 2);
  const auto& h = *sc->connections.at("horizontal");
  const auto& c = *sc->connections.at("canonical");
  for (int t = 0; t < 10; ++t) {
    const ChartPoint p = sc->sample_total(rng);
    const Tensor3 gh = h.christoffel(p.chart, p.x);
    const Tensor3 gc = c.christoffel(p.chart, p.x);
    for (std::size_t i = 0; i < gh.size(); ++i)
      CHECK((gh[i] - gc[i]).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("curved base: the lift difference is the curvature correction") {
  auto sc = build_scenario("s3-frame-sphere", {});
  RngStream rng(53, 3);
  auto fth = sc->tensors_for("horizontal");
  auto ftc = sc->tensors_for("canonical");
  for (int t = 0; t < 10; ++t) {
    const ChartPoint p = sc->sample_total(rng);
    const int base_chart = sc->bundle->projection().value(p).chart;
    const ChartPoint down = sc->bundle->projection().value(p);
    const Eigen::VectorXd X = rand_vec(rng, 2), Y = rand_vec(rng, 2);
    const Eigen::VectorXd Xh = sc->form->horizontal_lift(p, X);
    const Eigen::VectorXd diff =
        ftc->cov_lift_field(p, Xh, Y, base_chart) - fth->cov_lift_field(p, Xh, Y, base_chart);
    Eigen::Matrix2d S;
    for (int l = 0; l < 2; ++l) {
      const Eigen::VectorXd r =
          sc->nablaM->curvature(down.chart, down.x, Eigen::VectorXd::Unit(2, l), X, Y);
      S(0, l) = r[0];
      S(1, l) = r[1];
    }
    const Eigen::Matrix2d pm = frame_of(p);
    const Eigen::Matrix2d conj = pm.inverse() * S * pm;
    Eigen::VectorXd coeffs(4);
    coeffs << conj(0, 0), conj(0, 1), conj(1, 0), conj(1, 1);
    CHECK((diff - sc->bundle->fundamental(p, coeffs)).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("T vanishes and A projects to zero for both lifts") {
  for (const std::string id : {"s3-frame-flat", "s3-frame-sphere"}) {
    CAPTURE(id);
    auto sc = build_scenario(id, {});
    RngStream rng(54, 4);
    std::vector<ChartPoint> samples;
    for (int i = 0; i < 30; ++i) samples.push_back(sc->sample_total(rng));
    for (const std::string which : {"horizontal", "canonical"}) {
      CAPTURE(which);
      auto ft = sc->tensors_for(which);
      const ResidualReport rep = frame_bundle_checks(*sc, *ft, which == "horizontal", samples, rng);
      for (const auto& row : rep.rows) {
        CAPTURE(row.name);
        CHECK(row.residual < (row.name.find("omega.omega") != std::string::npos ? 1e-6 : 1e-7));
      }
    }
  }
}

TEST_CASE("canonical lift is torsion-free; horizontal lift over a curved base is not") {
  auto sphere = build_scenario("s3-frame-sphere", {});
  CHECK(sphere->connections.at("canonical")->symmetric());
  CHECK_FALSE(sphere->connections.at("horizontal")->symmetric());
  RngStream rng(55, 5);
  const ChartPoint p = sphere->sample_total(rng);
  const Tensor3 gc = sphere->connections.at("canonical")->christoffel(p.chart, p.x);
  double casym = 0.0;
  for (const auto& m : gc) casym = std::max(casym, (m - m.transpose()).cwiseAbs().maxCoeff());
  CHECK(casym < 1e-8);
  const Tensor3 gh = sphere->connections.at("horizontal")->christoffel(p.chart, p.x);
  double hasym = 0.0;
  for (const auto& m : gh) hasym = std::max(hasym, (m - m.transpose()).cwiseAbs().maxCoeff());
  CHECK(hasym > 1e-3);  // genuine torsion, not an artifact

  auto flat = build_scenario("s3-frame-flat", {});
  CHECK(flat->connections.at("horizontal")->symmetric());
}

TEST_SUITE_END();
