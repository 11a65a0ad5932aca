#include <doctest.h>

#include "fiberlab/core/rng.hpp"
#include "fiberlab/geometry/builtins.hpp"
#include "fiberlab/geometry/ops.hpp"

using namespace fiberlab;

namespace {

Eigen::VectorXd rand_vec(RngStream& rng, int n, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * (2.0 * rng.next_uniform() - 1.0);
  return v;
}

// Kaluza-Klein metric dx1^2 + dx2^2 + (dtheta + c x1 dx2)^2 on R^3 coordinates
struct HeisenbergMetric {
  double c;
  template <class T>
  TMat<T> operator()(int, const TVec<T>& z) const {
    TMat<T> g(3, 3);
    g(0, 0) = T(1.0);
    g(1, 1) = T(1.0) + T(c * c) * z[0] * z[0];
    g(2, 2) = T(1.0);
    g(1, 2) = T(c) * z[0];
    g(2, 1) = g(1, 2);
    return g;
  }
};

struct QuadraticOneForm {  // alpha = x1 dx2 - x2 dx1
  template <class T>
  TMat<T> operator()(int, const TVec<T>& x) const {
    TMat<T> a(1, 2);
    a(0, 0) = T(0.0) - x[1];
    a(0, 1) = x[0];
    return a;
  }
};

struct GradField {  // alpha = d(x1^2 + 3 x1 x2)
  template <class T>
  TMat<T> operator()(int, const TVec<T>& x) const {
    TMat<T> a(1, 2);
    a(0, 0) = T(2.0) * x[0] + T(3.0) * x[1];
    a(0, 1) = T(3.0) * x[0];
    return a;
  }
};

struct IdFunctor {
  int select_chart(int chart, const Eigen::VectorXd&) const { return chart; }
  template <class T>
  TVec<T> map(int, const TVec<T>& x, int) const {
    return x;
  }
};

struct SqFunctor {
  int select_chart(int chart, const Eigen::VectorXd&) const { return chart; }
  template <class T>
  TVec<T> map(int, const TVec<T>& x, int) const {
    return TVec<T>{x[0] * x[0] - x[1], x[0] * x[1]};
  }
};

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("levi-civita: flat space has vanishing coefficients") {
  auto plane = make_euclidean_space(2);
  LeviCivitaConnection lc(plane.get());
  const Tensor3 G = lc.christoffel(0, Eigen::Vector2d(0.3, -1.1));
  for (const auto& m : G) CHECK(m.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("levi-civita: sphere chart center has vanishing coefficients") {
  auto sph = make_sphere2();
  LeviCivitaConnection lc(sph.get());
  const Tensor3 G = lc.christoffel(0, Eigen::Vector2d::Zero());
  for (const auto& m : G) CHECK(m.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("levi-civita: invariant-metric coefficients match the frozen closed form") {
  // symbolic Levi-Civita of dx1^2 + dx2^2 + (dtheta + c x1 dx2)^2 at c = 2:
  // nonzero at the origin: Gamma^1_23 = -1, Gamma^2_13 = 1, Gamma^3_12 = 1
  auto m = std::make_shared<ChartedManifold>("heis", 3);
  m->add_chart({"global", [](const Eigen::VectorXd&) { return true; },
                [](const Eigen::VectorXd& x) { return x.norm(); }});
  m->set_metric(make_matrix_field(HeisenbergMetric{2.0}, 3, 3));
  LeviCivitaConnection lc(m.get());
  const Tensor3 G0 = lc.christoffel(0, Eigen::Vector3d::Zero());
  CHECK(G0[0](1, 2) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(G0[1](0, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(G0[2](0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  // away from the origin, against the closed forms
  const double c = 2.0, x1 = 0.37;
  const Tensor3 G = lc.christoffel(0, Eigen::Vector3d(x1, -0.4, 0.9));
  CHECK(G[0](1, 1) == doctest::Approx(-c * c * x1).epsilon(1e-12));
  CHECK(G[1](0, 1) == doctest::Approx(0.5 * c * c * x1).epsilon(1e-12));
  CHECK(G[2](0, 1) == doctest::Approx(0.5 * c * (1.0 - c * c * x1 * x1)).epsilon(1e-12));
  CHECK(G[2](0, 2) == doctest::Approx(-0.5 * c * c * x1).epsilon(1e-12));
}

TEST_CASE("levi-civita is metric compatible (finite differences)") {
  auto sph = make_sphere2();
  LeviCivitaConnection lc(sph.get());
  RngStream rng(2, 2);
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd x = rand_vec(rng, 2, 1.4);
    const Tensor3 G = lc.christoffel(0, x);
    const double h = 1e-5;
    for (int k = 0; k < 2; ++k) {
      Eigen::VectorXd xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const Eigen::MatrixXd dg = (sph->metric().value(0, xp) - sph->metric().value(0, xm)) / (2 * h);
      // nabla_k g_ij = d_k g_ij - Gamma^l_ki g_lj - Gamma^l_kj g_il
      const Eigen::MatrixXd g = sph->metric().value(0, x);
      Eigen::MatrixXd nab = dg;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l)
            nab(i, j) -= G[static_cast<std::size_t>(l)](k, i) * g(l, j) +
                         G[static_cast<std::size_t>(l)](k, j) * g(i, l);
      CHECK(nab.cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("levi-civita coefficients are exactly symmetric at random points") {
  auto sph = make_sphere2();
  LeviCivitaConnection lc(sph.get());
  RngStream rng(14, 0);
  for (int t = 0; t < 1000; ++t) {
    const Tensor3 G = lc.christoffel(static_cast<int>(rng.next_u32() % 2), rand_vec(rng, 2, 1.5));
    for (const auto& m : G) CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("conditioning error on a degenerate metric") {
  const Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
  std::vector<Eigen::MatrixXd> dg(2, Eigen::MatrixXd::Zero(2, 2));
  CHECK_THROWS_AS(levi_civita_christoffel(g, dg), ConditioningError);
}

TEST_CASE("covariant derivative: flat constants and the torsion identity") {
  auto plane = make_euclidean_space(2);
  LeviCivitaConnection lc(plane.get());
  InChartField constant = [](const Eigen::VectorXd&) { return Eigen::Vector2d(1.0, -2.0); };
  CHECK(covariant_derivative(lc, 0, Eigen::Vector2d(0.1, 0.2), Eigen::Vector2d(3, 4), constant)
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  auto sph = make_sphere2();
  LeviCivitaConnection lcs(sph.get());
  InChartField U = [](const Eigen::VectorXd& x) { return Eigen::Vector2d(sin(x[1]), x[0] * x[0]); };
  InChartField V = [](const Eigen::VectorXd& x) { return Eigen::Vector2d(x[1], cos(x[0])); };
  RngStream rng(4, 4);
  for (int t = 0; t < 30; ++t) {
    const Eigen::VectorXd x = rand_vec(rng, 2, 1.2);
    const Eigen::VectorXd uv = covariant_derivative(lcs, 0, x, U(x), V);
    const Eigen::VectorXd vu = covariant_derivative(lcs, 0, x, V(x), U);
    // coordinate bracket by finite differences
    const Eigen::VectorXd lie = directional_derivative(V, x, U(x)) - directional_derivative(U, x, V(x));
    CHECK((uv - vu - lie).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("great circles are geodesics on the sphere") {
  auto sph = make_sphere2();
  LeviCivitaConnection lc(sph.get());
  // the equator through chart coordinates: t -> (tan(t/2 + pi/4)... easier:
  // integrate the geodesic equation and check it stays unit-speed and closes
  Eigen::VectorXd x0 = Eigen::Vector2d(0.0, 0.0);
  const Eigen::MatrixXd g0 = sph->metric().value(0, x0);
  Eigen::VectorXd v0 = Eigen::Vector2d(1.0, 0.0);
  v0 /= std::sqrt(v0.dot(g0 * v0));
  GeodesicResult res = integrate_geodesic(lc, {0, x0}, v0, 2.0 * M_PI, 4000);
  // returns to the start after a full turn
  const ChartPoint back = sph->normalize(res.points.back());
  CHECK((back.x - x0).cwiseAbs().maxCoeff() < 1e-5);
  // velocity field along the great circle is parallel: residual of the
  // geodesic equation at a sampled point via covariant_derivative
  const ChartPoint mid = res.points[1000];
  const Eigen::VectorXd vm = res.velocities[1000];
  InChartField vel_field = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    // nearest-sample interpolation is enough for the residual bound
    // use the analytic unit tangent of the equator in chart coordinates:
    // the equator is the unit circle |u| = 1; tangent ~ rotate(u)
    const Eigen::Vector2d t(-x[1], x[0]);
    const double s = 1.0 + x.squaredNorm();
    return t * (s / 2.0);  // unit w.r.t. conformal metric 4/(1+|u|^2)^2
  };
  const Eigen::VectorXd resid = covariant_derivative(lc, mid.chart, mid.x, vel_field(mid.x), vel_field);
  CHECK(resid.cwiseAbs().maxCoeff() < 1e-6);
  (void)vm;
}

TEST_CASE("curvature: flat, antisymmetry, and the round-sphere identity") {
  auto plane = make_euclidean_space(2);
  LeviCivitaConnection lcp(plane.get());
  RngStream rng(6, 6);
  const Eigen::VectorXd u = rand_vec(rng, 2), v = rand_vec(rng, 2), w = rand_vec(rng, 2);
  CHECK(lcp.curvature(0, Eigen::Vector2d(0.2, 0.4), u, v, w).cwiseAbs().maxCoeff() < 1e-9);

  auto sph = make_sphere2();
  LeviCivitaConnection lcs(sph.get());
  for (int t = 0; t < 25; ++t) {
    const Eigen::VectorXd x = rand_vec(rng, 2, 1.3);
    const Eigen::VectorXd a = rand_vec(rng, 2), b = rand_vec(rng, 2);
    CHECK(lcs.curvature(0, x, a, a, b).cwiseAbs().maxCoeff() < 1e-7);
    // g(R(u,v)v, u) = |u|^2 |v|^2 - g(u,v)^2 for sectional curvature 1
    const Eigen::MatrixXd g = sph->metric().value(0, x);
    const double lhs = a.dot(g * lcs.curvature(0, x, a, b, b));
    const double rhs = a.dot(g * a) * b.dot(g * b) - std::pow(a.dot(g * b), 2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-5));
  }
}

TEST_CASE("constant-curvature override agrees with the finite-difference curvature") {
  auto sph = make_sphere2();
  LeviCivitaConnection fd(sph.get());
  ConstantCurvatureConnection an(sph.get(), sph->metric_ptr(), 1.0);
  RngStream rng(7, 7);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd x = rand_vec(rng, 2, 1.4);
    const Eigen::VectorXd u = rand_vec(rng, 2), v = rand_vec(rng, 2), w = rand_vec(rng, 2);
    CHECK((fd.curvature(0, x, u, v, w) - an.curvature(0, x, u, v, w)).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("second fundamental form: identity map, symmetry") {
  auto sph = make_sphere2();
  LeviCivitaConnection lc(sph.get());
  AnalyticMap<IdFunctor> id(sph.get(), sph.get(), IdFunctor{});
  RngStream rng(8, 8);
  for (int t = 0; t < 20; ++t) {
    const ChartPoint p{0, rand_vec(rng, 2, 1.2)};
    const Eigen::VectorXd u = rand_vec(rng, 2), v = rand_vec(rng, 2);
    CHECK(second_fundamental_form(id, lc, lc, p, u, v).cwiseAbs().maxCoeff() < 1e-9);
  }
  // symmetry for a genuinely curved map: inclusion of a latitude circle
  // beta(u,v) = beta(v,u)
  auto circ = make_interval(-10.0, 10.0);
  LeviCivitaConnection lci(circ.get());
  const double r = 0.6;  // chart radius of the latitude circle
  FunctionalMap lat(circ.get(), sph.get(), [r](const ChartPoint& t) {
    Eigen::VectorXd y(2);
    y << r * std::cos(t.x[0]), r * std::sin(t.x[0]);
    return ChartPoint{0, y};
  });
  for (int t = 0; t < 10; ++t) {
    const ChartPoint p{0, rand_vec(rng, 1, 2.0)};
    const Eigen::VectorXd u = rand_vec(rng, 1), v = rand_vec(rng, 1);
    const Eigen::VectorXd b1 = second_fundamental_form(lat, lci, lc, p, u, v);
    const Eigen::VectorXd b2 = second_fundamental_form(lat, lci, lc, p, v, u);
    CHECK((b1 - b2).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("tension field: geodesics, constants, and the latitude-circle oracle") {
  auto sph = make_sphere2();
  ConstantCurvatureConnection lc(sph.get(), sph->metric_ptr(), 1.0);
  auto line = make_interval(-8.0, 8.0);
  LeviCivitaConnection lci(line.get());

  // the equator |u| = 1 traversed as (cos t, sin t) is unit speed for the
  // conformal factor 4/(1+|u|^2)^2 and totally geodesic
  FunctionalMap equator(line.get(), sph.get(), [](const ChartPoint& t) {
    Eigen::VectorXd y(2);
    y << std::cos(t.x[0]), std::sin(t.x[0]);
    return ChartPoint{0, y};
  });
  const Eigen::VectorXd tau_eq =
      tension_field(equator, line->metric(), lci, lc, {0, Eigen::VectorXd::Constant(1, 0.7)});
  CHECK(tau_eq.cwiseAbs().maxCoeff() < 1e-6);

  // constant map has zero tension
  FunctionalMap constant(line.get(), sph.get(), [](const ChartPoint&) {
    return ChartPoint{0, Eigen::Vector2d(0.2, -0.3)};
  });
  CHECK(tension_field(constant, line->metric(), lci, lc, {0, Eigen::VectorXd::Constant(1, 0.5)})
            .cwiseAbs()
            .maxCoeff() < 1e-9);

  // latitude circle at polar angle theta0: tension magnitude |cot(theta0)|
  // with unit-speed parameterization; oracle = direct beta trace
  const double r = 0.6;
  FunctionalMap lat(line.get(), sph.get(), [r](const ChartPoint& t) {
    Eigen::VectorXd y(2);
    y << r * std::cos(t.x[0]), r * std::sin(t.x[0]);
    return ChartPoint{0, y};
  });
  const ChartPoint p{0, Eigen::VectorXd::Constant(1, 0.4)};
  const Eigen::VectorXd tau = tension_field(lat, line->metric(), lci, lc, p);
  const Eigen::VectorXd beta =
      second_fundamental_form(lat, lci, lc, p, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1));
  CHECK((tau - beta).cwiseAbs().maxCoeff() < 1e-8);  // flat source, e = d/dt
  CHECK(tau.cwiseAbs().maxCoeff() > 1e-2);           // genuinely non-harmonic
}

TEST_CASE("codifferential identities on the flat plane") {
  auto plane = make_euclidean_space(2);
  auto grad = make_matrix_field(GradField{}, 1, 2);
  // alpha = df with f = x1^2 + 3 x1 x2: d*alpha = -lap f = -2
  CHECK(codifferential(*grad, plane->metric(), 0, Eigen::Vector2d(0.7, -0.2)) ==
        doctest::Approx(-2.0).epsilon(1e-9));
  auto rot = make_matrix_field(QuadraticOneForm{}, 1, 2);
  CHECK(codifferential(*rot, plane->metric(), 0, Eigen::Vector2d(0.5, 0.1)) ==
        doctest::Approx(0.0).epsilon(1e-10));
  FunctionalMatrixField constant([](int, const Eigen::VectorXd&) { return Eigen::MatrixXd::Ones(1, 2); },
                                 1, 2);
  CHECK(codifferential(constant, plane->metric(), 0, Eigen::Vector2d(0.5, 0.1)) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("sharp: euclidean, conformal chart value, musical identity") {
  CHECK((sharp(Eigen::Matrix2d::Identity(), Eigen::Vector2d(2, -3)) - Eigen::Vector2d(2, -3))
            .cwiseAbs()
            .maxCoeff() < 1e-14);
  auto sph = make_sphere2();
  const Eigen::MatrixXd g = sph->metric().value(0, Eigen::Vector2d::Zero());
  const Eigen::VectorXd s = sharp(g, Eigen::Vector2d(1, 0));
  CHECK(s[0] == doctest::Approx(0.25).epsilon(1e-12));  // g = 4 I at the chart center
  CHECK(s[1] == doctest::Approx(0.0));
  RngStream rng(9, 9);
  for (int t = 0; t < 30; ++t) {
    const Eigen::VectorXd x = rand_vec(rng, 2, 1.2);
    const Eigen::MatrixXd gx = sph->metric().value(0, x);
    const Eigen::VectorXd a = rand_vec(rng, 2), b = rand_vec(rng, 2);
    CHECK(sharp(gx, a).dot(gx * sharp(gx, b)) == doctest::Approx(a.dot(gx.inverse() * b)).epsilon(1e-10));
  }
}

TEST_CASE("orthonormal frames diagonalize the metric deterministically") {
  auto sph = make_sphere2();
  RngStream rng(10, 1);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd x = rand_vec(rng, 2, 1.2);
    const Eigen::MatrixXd g = sph->metric().value(0, x);
    const Eigen::MatrixXd e = orthonormal_frame(g);
    CHECK((e.transpose() * g * e - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((orthonormal_frame(g) - e).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("chart transitions are mutually inverse and tensors transform") {
  auto sph = make_sphere2();
  RngStream rng(12, 5);
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd x = rand_vec(rng, 2, 1.0);
    if (x.norm() < 0.4) x *= 0.6 / x.norm();
    const Eigen::VectorXd y = sph->to_chart({0, x}, 1);
    const Eigen::VectorXd back = sph->to_chart({1, y}, 0);
    CHECK((back - x).cwiseAbs().maxCoeff() < 1e-9);
    // metric transforms as a bilinear form: g0 = J^T g1 J
    const Eigen::MatrixXd J = sph->transition_jacobian(0, 1, x);
    const Eigen::MatrixXd g0 = sph->metric().value(0, x);
    const Eigen::MatrixXd g1 = sph->metric().value(1, y);
    CHECK((J.transpose() * g1 * J - g0).cwiseAbs().maxCoeff() < 1e-8);
    // covector components transform with the inverse Jacobian
    auto rot = make_matrix_field(QuadraticOneForm{}, 1, 2);
    const Eigen::MatrixXd a0 = rot->value(0, x);
    const Eigen::VectorXd v = rand_vec(rng, 2);
    // alpha is defined per chart by the same formula only in chart 0; check
    // the pullback consistency instead: alpha_0(v) = (alpha_0 J^{-1})(J v)
    CHECK((a0 * v)(0) == doctest::Approx(((a0 * J.inverse()) * (J * v))(0)).epsilon(1e-9));
  }
}

TEST_CASE("analytic differentials match finite differences") {
  auto sph = make_sphere2();
  AnalyticMap<SqFunctor> F(sph.get(), sph.get(), SqFunctor{});
  const ChartPoint p{0, Eigen::Vector2d(0.4, -0.2)};
  const Eigen::MatrixXd J = F.differential_into(p, 0);
  const Eigen::MatrixXd Jfd = F.SmoothMap::differential_into(p, 0);
  CHECK((J - Jfd).cwiseAbs().maxCoeff() / std::max(1.0, J.cwiseAbs().maxCoeff()) < 1e-6);
}

TEST_CASE("sphere embedding lands on the unit sphere") {
  auto sph = make_sphere2();
  RngStream rng(13, 2);
  for (int t = 0; t < 50; ++t) {
    const ChartPoint p{static_cast<int>(rng.next_u32() % 2), rand_vec(rng, 2, 1.5)};
    CHECK(sph->embedding()->embed(p).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_SUITE_END();
