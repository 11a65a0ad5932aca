#include <doctest.h>

#include <cmath>

#include "fiberlab/core/jet.hpp"
#include "fiberlab/core/rng.hpp"

using namespace fiberlab;

TEST_SUITE_BEGIN("core");

TEST_CASE("jet derivatives match finite differences") {
  auto f = [](auto x, auto y) { return sin(x * y) + exp(x / (y + 2.0)) * sqrt(y + 3.0); };
  const double x0 = 0.7, y0 = -0.4, h = 1e-6;
  Jet jx(x0, 0, 2), jy(y0, 1, 2);
  const Jet r = f(jx, jy);
  const double dfdx = (f(Jet(x0 + h), Jet(y0)).value() - f(Jet(x0 - h), Jet(y0)).value()) / (2 * h);
  const double dfdy = (f(Jet(x0), Jet(y0 + h)).value() - f(Jet(x0), Jet(y0 - h)).value()) / (2 * h);
  CHECK(r.d(0) == doctest::Approx(dfdx).epsilon(1e-8));
  CHECK(r.d(1) == doctest::Approx(dfdy).epsilon(1e-8));
}

TEST_CASE("jet division and unary minus") {
  Jet x(2.0, 0, 1);
  const Jet r = -(Jet(1.0) / x);  // -1/x, derivative 1/x^2
  CHECK(r.value() == doctest::Approx(-0.5));
  CHECK(r.d(0) == doctest::Approx(0.25));
}

TEST_CASE("streams are deterministic and independent of draw interleaving") {
  RngStream a(123, 7), b(123, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u32() == b.next_u32());
  RngStream c(123, 8);
  bool differs = false;
  RngStream a2(123, 7);
  for (int i = 0; i < 10; ++i) differs = differs || (a2.next_u32() != c.next_u32());
  CHECK(differs);
}

TEST_CASE("uniforms stay inside the open interval") {
  RngStream r(1, 1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.next_uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal inverse cdf hits known quantiles") {
  CHECK(RngStream::normal_icdf(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(RngStream::normal_icdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(RngStream::normal_icdf(0.0013498980316300945) == doctest::Approx(-3.0).epsilon(1e-10));
}

TEST_CASE("normal draws have sane moments") {
  RngStream r(99, 0);
  double m1 = 0, m2 = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const double z = r.next_normal();
    m1 += z;
    m2 += z * z;
  }
  m1 /= n;
  m2 /= n;
  CHECK(std::abs(m1) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.03));
}

TEST_SUITE_END();
