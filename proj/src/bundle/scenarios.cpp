#include "fiberlab/bundle/scenarios.hpp"

#include "fiberlab/geometry/builtins.hpp"

namespace fiberlab {

namespace {

using nlohmann::json;

double uniform_in(RngStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_uniform();
}

json merge_params(const json& defaults, const json& overrides, const std::string& id) {
  json out = defaults;
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    if (!defaults.contains(it.key()))
      throw ConfigError(id + ": unknown parameter '" + it.key() + "'");
    out[it.key()] = it.value();
  }
  return out;
}

// ---------------------------------------------------------------------------
// s1-abelian-kk: R^2 x U(1), omega = dtheta + c x1 dx2, invariant metric
// dx1^2 + dx2^2 + kappa (dtheta + c x1 dx2)^2.
// ---------------------------------------------------------------------------

struct S1Metric {
  double c, kappa;
  template <class T>
  TMat<T> operator()(int, const TVec<T>& z) const {
    TMat<T> g(3, 3);
    g(0, 0) = T(1.0);
    g(1, 1) = T(1.0) + T(kappa * c * c) * z[0] * z[0];
    g(2, 2) = T(kappa);
    g(1, 2) = T(kappa * c) * z[0];
    g(2, 1) = g(1, 2);
    return g;
  }
};

struct S1Omega {
  double c;
  template <class T>
  TMat<T> operator()(int, const TVec<T>& z) const {
    TMat<T> w(1, 3);
    w(0, 0) = T(0.0);
    w(0, 1) = T(c) * z[0];
    w(0, 2) = T(1.0);
    return w;
  }
};

struct S1Sigma {
  template <class T>
  TMat<T> operator()(int, const TVec<T>&) const {
    TMat<T> s(3, 1);
    s(2, 0) = T(1.0);
    return s;
  }
};

struct S1Projection {
  int select_chart(int, const Eigen::VectorXd&) const { return 0; }
  template <class T>
  TVec<T> map(int, const TVec<T>& z, int) const {
    return TVec<T>{z[0], z[1]};
  }
};

/// Rotation of the fiber angle; charts differ by a pi offset, so the
/// pushforward is the identity in coordinates.
class S1Action final : public RightAction {
public:
  explicit S1Action(const ChartedManifold* total) : total_(total) {}
  ChartPoint act(const ChartPoint& p, const Eigen::MatrixXcd& g) const override {
    const double phi = std::arg(g(0, 0));
    const double angle = p.x[2] + (p.chart == 1 ? M_PI : 0.0) + phi;
    const double wrapped = std::remainder(angle, 2.0 * M_PI);
    ChartPoint out = p;
    if (std::abs(wrapped) <= 0.5 * M_PI) {
      out.chart = 0;
      out.x[2] = wrapped;
    } else {
      out.chart = 1;
      out.x[2] = std::remainder(angle - M_PI, 2.0 * M_PI);
    }
    return out;
  }
  Eigen::MatrixXd differential_into(const ChartPoint&, const Eigen::MatrixXcd&, int) const override {
    return Eigen::MatrixXd::Identity(3, 3);
  }
  const ChartedManifold& total() const override { return *total_; }

private:
  const ChartedManifold* total_;
};

std::shared_ptr<Scenario> build_s1(const json& overrides) {
  const json params = merge_params({{"c", 2.0}, {"k0", 1.0}}, overrides, "s1-abelian-kk");
  const double c = params.at("c").get<double>();
  const double kappa = params.at("k0").get<double>();
  if (kappa <= 0.0) throw ConfigError("s1-abelian-kk: k0 must be positive");

  auto sc = std::make_shared<Scenario>();
  sc->id = "s1-abelian-kk";
  sc->params = params;

  auto total = std::make_shared<ChartedManifold>("R^2xS^1", 3);
  for (int ch = 0; ch < 2; ++ch) {
    total->add_chart({"theta-" + std::to_string(ch),
                      [](const Eigen::VectorXd& z) { return std::abs(z[2]) < M_PI; },
                      [](const Eigen::VectorXd& z) { return std::abs(z[2]); }});
  }
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(3);
  shift[2] = M_PI;
  const std::vector<bool> mask{false, false, true};
  total->add_transition(0, 1, std::make_shared<ShiftWrapTransition>(shift, mask));
  total->add_transition(1, 0, std::make_shared<ShiftWrapTransition>(shift, mask));
  total->set_metric(make_matrix_field(S1Metric{c, kappa}, 3, 3));

  auto base = make_euclidean_space(2);
  auto group = make_u1();
  auto omega = make_matrix_field(S1Omega{c}, 1, 3);
  auto sigma = make_matrix_field(S1Sigma{}, 3, 1);
  auto projection = make_map(total.get(), base.get(), S1Projection{});
  auto action = std::make_shared<S1Action>(total.get());

  sc->total = total;
  sc->base = base;
  sc->group = group;
  sc->bundle = std::make_shared<PrincipalBundle>(total, base, group, projection, action, sigma);
  sc->form = std::make_shared<ConnectionForm>(sc->bundle, omega);
  sc->nablaP = std::make_shared<LeviCivitaConnection>(total.get());
  sc->nablaM = std::make_shared<FunctionalConnection>(
      base.get(),
      [](int, const Eigen::VectorXd&) { return Tensor3(2, Eigen::MatrixXd::Zero(2, 2)); }, true);
  sc->tensors = std::make_shared<FundamentalTensors>(sc->bundle, sc->form, sc->nablaP);
  sc->base_metric = base->metric_ptr();
  sc->total_metric = total->metric_ptr();
  sc->kaluza_klein = true;
  sc->k0 = Eigen::MatrixXd::Constant(1, 1, kappa);
  sc->connections["levi-civita"] = sc->nablaP;
  sc->summary =
      "trivial U(1) bundle over the plane, omega = dtheta + c x1 dx2, invariant metric "
      "dx1^2 + dx2^2 + k0 (dtheta + c x1 dx2)^2; closed forms for every quantity";
  sc->sample_total = [](RngStream& rng) {
    Eigen::VectorXd z(3);
    z << uniform_in(rng, -1.5, 1.5), uniform_in(rng, -1.5, 1.5), uniform_in(rng, -1.4, 1.4);
    return ChartPoint{static_cast<int>(rng.next_u32() % 2), z};
  };
  sc->section = [total](const ChartPoint& b) {
    Eigen::VectorXd z(3);
    z << b.x[0], b.x[1], 0.0;
    return ChartPoint{0, z};
  };
  sc->default_start = ChartPoint{0, Eigen::VectorXd::Zero(3)};
  return sc;
}

// ---------------------------------------------------------------------------
// s2-hopf: SU(2) -> S^2 with Berger parameter lambda. omega = (1/2) sigma^3,
// fundamental generator q |-> q k, metric (sigma^1)^2 + (sigma^2)^2 +
// lambda^2 (sigma^3)^2 over the unit round base.
// ---------------------------------------------------------------------------

struct HopfOmega {
  template <class T>
  TMat<T> operator()(int chart, const TVec<T>& x) const {
    const TQuat<T> q = quat_from_stereo(x, chart);
    const TQuat<T> qc = q.conj();
    TMat<T> w(1, 3);
    for (int i = 0; i < 3; ++i) w(0, i) = (qc * quat_stereo_partial(x, chart, i)).z;
    return w;
  }
};

struct HopfSigma {
  template <class T>
  TMat<T> operator()(int chart, const TVec<T>& x) const {
    const TQuat<T> q = quat_from_stereo(x, chart);
    const TVec<T> push = stereo_push(q, q * TQuat<T>(T(0.0), T(0.0), T(0.0), T(1.0)), chart);
    TMat<T> s(3, 1);
    for (int i = 0; i < 3; ++i) s(i, 0) = push[static_cast<std::size_t>(i)];
    return s;
  }
};

struct HopfProjection {
  int select_chart(int chart, const Eigen::VectorXd& x) const {
    TVec<double> xv(x.data(), x.data() + 3);
    const TQuat<double> q = quat_from_stereo(xv, chart);
    const TQuat<double> m = q * TQuat<double>(0, 0, 0, 1) * q.conj();
    return m.z >= 0.0 ? 0 : 1;
  }
  template <class T>
  TVec<T> map(int chart, const TVec<T>& x, int dst) const {
    const TQuat<T> q = quat_from_stereo(x, chart);
    const TQuat<T> m = q * TQuat<T>(T(0.0), T(0.0), T(0.0), T(1.0)) * q.conj();
    const T denom = (dst == 0) ? (T(1.0) + m.z) : (T(1.0) - m.z);
    return TVec<T>{m.x / denom, m.y / denom};
  }
};

struct HopfAction {
  int select_chart(int chart, const Eigen::VectorXd& x, const Eigen::MatrixXcd& g) const {
    const double t = std::arg(g(0, 0));
    TVec<double> xv(x.data(), x.data() + 3);
    const TQuat<double> q = quat_from_stereo(xv, chart) * TQuat<double>(std::cos(t), 0, 0, std::sin(t));
    return q.w >= 0.0 ? 0 : 1;
  }
  template <class T>
  TVec<T> map(int chart, const TVec<T>& x, const Eigen::MatrixXcd& g, int dst) const {
    const double t = std::arg(g(0, 0));
    const TQuat<T> gq(T(std::cos(t)), T(0.0), T(0.0), T(std::sin(t)));
    return stereo_coords(quat_from_stereo(x, chart) * gq, dst);
  }
};

std::shared_ptr<Scenario> build_s2(const json& overrides) {
  const json params = merge_params({{"lambda", 0.8}}, overrides, "s2-hopf");
  const double lambda = params.at("lambda").get<double>();
  if (lambda <= 0.0) throw ConfigError("s2-hopf: lambda must be positive");

  auto sc = std::make_shared<Scenario>();
  sc->id = "s2-hopf";
  sc->params = params;
  auto total = make_su2_manifold(1.0, 1.0, lambda * lambda);
  auto base = make_sphere2();
  auto group = make_u1();
  auto omega = make_matrix_field(HopfOmega{}, 1, 3);
  auto sigma = make_matrix_field(HopfSigma{}, 3, 1);
  auto projection = make_map(total.get(), base.get(), HopfProjection{});
  auto action = std::make_shared<AnalyticAction<HopfAction>>(total.get(), HopfAction{});

  sc->total = total;
  sc->base = base;
  sc->group = group;
  sc->bundle = std::make_shared<PrincipalBundle>(total, base, group, projection, action, sigma);
  sc->form = std::make_shared<ConnectionForm>(sc->bundle, omega);
  sc->nablaP = std::make_shared<LeviCivitaConnection>(total.get());
  sc->nablaM = std::make_shared<ConstantCurvatureConnection>(base.get(), base->metric_ptr(), 1.0);
  sc->tensors = std::make_shared<FundamentalTensors>(sc->bundle, sc->form, sc->nablaP);
  sc->base_metric = base->metric_ptr();
  sc->total_metric = total->metric_ptr();
  sc->kaluza_klein = true;
  sc->k0 = Eigen::MatrixXd::Constant(1, 1, 4.0 * lambda * lambda);
  sc->connections["levi-civita"] = sc->nablaP;
  sc->summary =
      "Hopf fibration SU(2) -> S^2 with Berger parameter; invariant-fiber-metric identity table "
      "over a curved nonabelian total space, round unit base";
  sc->sample_total = [](RngStream& rng) {
    Eigen::VectorXd z(3);
    for (int i = 0; i < 3; ++i) z[i] = uniform_in(rng, -0.9, 0.9);
    return ChartPoint{static_cast<int>(rng.next_u32() % 2), z};
  };
  sc->section = [total](const ChartPoint& b) {
    // m = inverse stereographic image of b; q rotates the k-axis onto m
    const double s = b.x.squaredNorm();
    TQuat<double> m(0.0, 2.0 * b.x[0] / (1.0 + s), 2.0 * b.x[1] / (1.0 + s), (1.0 - s) / (1.0 + s));
    if (b.chart == 1) m.z = -m.z;
    const TQuat<double> k(0.0, 0.0, 0.0, 1.0);
    TQuat<double> q;
    if (b.chart == 0) {
      const TQuat<double> mk = m * k;
      q = TQuat<double>(1.0 - mk.w, -mk.x, -mk.y, -mk.z);  // 1 - m k
    } else {
      const TQuat<double> mk = m * k;
      q = TQuat<double>(1.0 + mk.w, mk.x, mk.y, mk.z) * TQuat<double>(0.0, 1.0, 0.0, 0.0);  // (1 + m k) i
    }
    const double norm = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    q = (1.0 / norm) * q;
    const int chart = (q.w >= 0.0) ? 0 : 1;
    const TVec<double> v = stereo_coords(q, chart);
    Eigen::VectorXd z(3);
    z << v[0], v[1], v[2];
    return ChartPoint{chart, z};
  };
  sc->default_start = ChartPoint{0, Eigen::VectorXd::Zero(3)};
  return sc;
}

// ---------------------------------------------------------------------------
// su2-fiber fixture: R x SU(2), omega the full Maurer-Cartan form, metric
// dt^2 + bi-invariant; the bracket term of the invariant-metric table is
// nonzero here.
// ---------------------------------------------------------------------------

struct Su2FiberMetric {
  template <class T>
  TMat<T> operator()(int chart, const TVec<T>& z) const {
    const TVec<T> v{z[1], z[2], z[3]};
    const TQuat<T> q = quat_from_stereo(v, chart);
    const TQuat<T> qc = q.conj();
    TMat<T> cof(3, 3);
    for (int i = 0; i < 3; ++i) {
      const TQuat<T> mc = qc * quat_stereo_partial(v, chart, i);
      cof(0, i) = T(2.0) * mc.x;
      cof(1, i) = T(2.0) * mc.y;
      cof(2, i) = T(2.0) * mc.z;
    }
    TMat<T> g(4, 4);
    g(0, 0) = T(1.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        T acc(0.0);
        for (int a = 0; a < 3; ++a) acc += cof(a, i) * cof(a, j);
        g(1 + i, 1 + j) = acc;
      }
    return g;
  }
};

struct Su2FiberOmega {
  template <class T>
  TMat<T> operator()(int chart, const TVec<T>& z) const {
    const TVec<T> v{z[1], z[2], z[3]};
    const TQuat<T> q = quat_from_stereo(v, chart);
    const TQuat<T> qc = q.conj();
    TMat<T> w(3, 4);
    for (int i = 0; i < 3; ++i) {
      const TQuat<T> mc = qc * quat_stereo_partial(v, chart, i);
      w(0, 1 + i) = T(2.0) * mc.x;
      w(1, 1 + i) = T(2.0) * mc.y;
      w(2, 1 + i) = T(2.0) * mc.z;
    }
    return w;
  }
};

struct Su2FiberSigma {
  template <class T>
  TMat<T> operator()(int chart, const TVec<T>& z) const {
    const TVec<T> v{z[1], z[2], z[3]};
    const TQuat<T> q = quat_from_stereo(v, chart);
    TMat<T> s(4, 3);
    const TQuat<T> units[3] = {TQuat<T>(T(0.0), T(0.5), T(0.0), T(0.0)),
                               TQuat<T>(T(0.0), T(0.0), T(0.5), T(0.0)),
                               TQuat<T>(T(0.0), T(0.0), T(0.0), T(0.5))};
    for (int a = 0; a < 3; ++a) {
      const TVec<T> push = stereo_push(q, q * units[a], chart);
      for (int i = 0; i < 3; ++i) s(1 + i, a) = push[static_cast<std::size_t>(i)];
    }
    return s;
  }
};

struct Su2FiberProjection {
  int select_chart(int, const Eigen::VectorXd&) const { return 0; }
  template <class T>
  TVec<T> map(int, const TVec<T>& z, int) const {
    return TVec<T>{z[0]};
  }
};

struct Su2FiberTransition {
  template <class T>
  TVec<T> operator()(const TVec<T>& z) const {
    const T s = z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
    return TVec<T>{z[0], z[1] / s, z[2] / s, z[3] / s};
  }
};

struct Su2FiberAction {
  static TQuat<double> to_quat(const Eigen::MatrixXcd& g) {
    return TQuat<double>(g(0, 0).real(), -g(0, 1).imag(), -g(0, 1).real(), -g(0, 0).imag());
  }
  int select_chart(int chart, const Eigen::VectorXd& z, const Eigen::MatrixXcd& g) const {
    TVec<double> v{z[1], z[2], z[3]};
    const TQuat<double> q = quat_from_stereo(v, chart) * to_quat(g);
    return q.w >= 0.0 ? 0 : 1;
  }
  template <class T>
  TVec<T> map(int chart, const TVec<T>& z, const Eigen::MatrixXcd& g, int dst) const {
    const TQuat<double> gq = to_quat(g);
    const TVec<T> v{z[1], z[2], z[3]};
    const TQuat<T> q = quat_from_stereo(v, chart) * TQuat<T>(T(gq.w), T(gq.x), T(gq.y), T(gq.z));
    const TVec<T> out = stereo_coords(q, dst);
    return TVec<T>{z[0], out[0], out[1], out[2]};
  }
};

// ---------------------------------------------------------------------------
// s3 frame bundles
// ---------------------------------------------------------------------------

std::shared_ptr<Scenario> build_s3(const json& overrides, bool sphere) {
  const std::string id = sphere ? "s3-frame-sphere" : "s3-frame-flat";
  const json params = merge_params({{"connection", sphere ? "canonical" : "horizontal"}}, overrides, id);
  const std::string conn_name = params.at("connection").get<std::string>();

  auto sc = std::make_shared<Scenario>();
  sc->id = id;
  sc->params = params;
  auto base = sphere ? make_sphere2() : make_flat_torus2();
  std::shared_ptr<AffineConnection> base_conn;
  if (sphere)
    base_conn = std::make_shared<ConstantCurvatureConnection>(base.get(), base->metric_ptr(), 1.0);
  else
    base_conn = std::make_shared<LeviCivitaConnection>(base.get());
  auto gl2 = make_gl2();
  FrameBundleParts parts =
      make_frame_bundle(base, base_conn, gl2, sphere ? FrameBase::Sphere : FrameBase::Flat);

  sc->total = parts.total;
  sc->base = base;
  sc->group = gl2;
  sc->bundle = parts.bundle;
  sc->form = parts.form;
  sc->connections["horizontal"] = parts.horizontal;
  sc->connections["canonical"] = parts.canonical;
  if (conn_name != "horizontal" && conn_name != "canonical")
    throw ConfigError(id + ": connection must be 'horizontal' or 'canonical'");
  sc->nablaP = sc->connections[conn_name];
  sc->nablaM = base_conn;
  sc->tensors = std::make_shared<FundamentalTensors>(sc->bundle, sc->form, sc->nablaP);
  sc->base_metric = base->metric_ptr();
  sc->kaluza_klein = false;
  sc->summary = sphere ? "linear frame bundle over the round sphere; canonical-lift and "
                         "horizontal-lift connections with the curvature correction term"
                       : "linear frame bundle over the flat torus; canonical-lift and "
                         "horizontal-lift connections coincide";
  sc->sample_total = [sphere](RngStream& rng) {
    Eigen::VectorXd z(6);
    const double r = sphere ? 0.9 : 1.5;
    z[0] = uniform_in(rng, -r, r);
    z[1] = uniform_in(rng, -r, r);
    double det = 0.0;
    do {
      z[2] = 1.0 + uniform_in(rng, -0.35, 0.35);
      z[3] = uniform_in(rng, -0.35, 0.35);
      z[4] = uniform_in(rng, -0.35, 0.35);
      z[5] = 1.0 + uniform_in(rng, -0.35, 0.35);
      det = z[2] * z[5] - z[3] * z[4];
    } while (std::abs(det) < 0.4);
    const int nch = sphere ? 2 : 4;
    return ChartPoint{static_cast<int>(rng.next_u32() % nch), z};
  };
  sc->section = [](const ChartPoint& b) {
    Eigen::VectorXd z(6);
    z << b.x[0], b.x[1], 1.0, 0.0, 0.0, 1.0;
    return ChartPoint{b.chart, z};
  };
  {
    Eigen::VectorXd z0(6);
    z0 << 0.1, 0.1, 1.0, 0.0, 0.0, 1.0;
    sc->default_start = ChartPoint{0, z0};
  }
  return sc;
}

}  // namespace

std::vector<CatalogEntry> scenario_catalog() {
  auto s1 = build_s1({});
  auto s2 = build_s2({});
  auto s3f = build_s3({}, false);
  auto s3s = build_s3({}, true);
  return {{s1->id, s1->summary, "c (default 2), k0 (default 1)"},
          {s2->id, s2->summary, "lambda (default 0.8)"},
          {s3f->id, s3f->summary, "connection: horizontal|canonical (default horizontal)"},
          {s3s->id, s3s->summary, "connection: horizontal|canonical (default canonical)"}};
}

std::shared_ptr<Scenario> build_scenario(const std::string& id, const nlohmann::json& params) {
  if (id == "s1-abelian-kk") return build_s1(params);
  if (id == "s2-hopf") return build_s2(params);
  if (id == "s3-frame-flat") return build_s3(params, false);
  if (id == "s3-frame-sphere") return build_s3(params, true);
  throw ConfigError("unknown scenario id '" + id + "'");
}

std::shared_ptr<Scenario> make_su2_fiber_fixture() {
  auto sc = std::make_shared<Scenario>();
  sc->id = "su2-fiber-fixture";
  sc->params = json::object();

  auto total = std::make_shared<ChartedManifold>("RxSU(2)", 4);
  for (int c = 0; c < 2; ++c) {
    total->add_chart({"chart-" + std::to_string(c),
                      [](const Eigen::VectorXd& z) { return z.tail(3).norm() < 8.0; },
                      [](const Eigen::VectorXd& z) { return std::max(z.tail(3).norm(), 2.0); }});
  }
  total->add_transition(0, 1, std::make_shared<AnalyticTransition<Su2FiberTransition>>(Su2FiberTransition{}));
  total->add_transition(1, 0, std::make_shared<AnalyticTransition<Su2FiberTransition>>(Su2FiberTransition{}));
  total->set_metric(make_matrix_field(Su2FiberMetric{}, 4, 4));

  auto base = make_euclidean_space(1);
  auto group = make_su2();
  auto omega = make_matrix_field(Su2FiberOmega{}, 3, 4);
  auto sigma = make_matrix_field(Su2FiberSigma{}, 4, 3);
  auto projection = make_map(total.get(), base.get(), Su2FiberProjection{});
  auto action = std::make_shared<AnalyticAction<Su2FiberAction>>(total.get(), Su2FiberAction{});

  sc->total = total;
  sc->base = base;
  sc->group = group;
  sc->bundle = std::make_shared<PrincipalBundle>(total, base, group, projection, action, sigma);
  sc->form = std::make_shared<ConnectionForm>(sc->bundle, omega);
  sc->nablaP = std::make_shared<LeviCivitaConnection>(total.get());
  sc->nablaM = std::make_shared<FunctionalConnection>(
      base.get(),
      [](int, const Eigen::VectorXd&) { return Tensor3(1, Eigen::MatrixXd::Zero(1, 1)); }, true);
  sc->tensors = std::make_shared<FundamentalTensors>(sc->bundle, sc->form, sc->nablaP);
  sc->base_metric = base->metric_ptr();
  sc->total_metric = total->metric_ptr();
  sc->kaluza_klein = true;
  sc->k0 = Eigen::MatrixXd::Identity(3, 3);
  sc->connections["levi-civita"] = sc->nablaP;
  sc->summary = "trivial SU(2) bundle over a line with bi-invariant fiber metric (validation fixture)";
  sc->sample_total = [](RngStream& rng) {
    Eigen::VectorXd z(4);
    z[0] = uniform_in(rng, -1.0, 1.0);
    for (int i = 1; i < 4; ++i) z[i] = uniform_in(rng, -0.8, 0.8);
    return ChartPoint{static_cast<int>(rng.next_u32() % 2), z};
  };
  sc->section = [](const ChartPoint& b) {
    Eigen::VectorXd z(4);
    z << b.x[0], 0.0, 0.0, 0.0;
    return ChartPoint{0, z};
  };
  sc->default_start = ChartPoint{0, Eigen::VectorXd::Zero(4)};
  return sc;
}

}  // namespace fiberlab
