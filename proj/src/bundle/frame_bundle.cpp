#include "fiberlab/bundle/frame_bundle.hpp"

#include "fiberlab/geometry/builtins.hpp"

namespace fiberlab {

namespace {

constexpr int kBaseDim = 2;
constexpr int kFiberDim = 4;
constexpr int kTotalDim = 6;

// gl(2) elementary basis in row-major order, matching LieGroup make_gl2().
int eidx(int row, int col) { return 2 * row + col; }

template <class T>
void base_gamma_flat(const TVec<T>&, T G[2][2][2]) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) G[i][j][k] = T(0.0);
}

// Levi-Civita of the conformal round metric 4/(1+|u|^2)^2 on a stereographic
// chart: Gamma^i_jk = d_j(lam) d^i_k + d_k(lam) d^i_j - delta_jk d_i(lam)
// with lam = log(2) - log(1+|u|^2).
template <class T>
void base_gamma_sphere(const TVec<T>& x, T G[2][2][2]) {
  const T s = x[0] * x[0] + x[1] * x[1];
  const T f = T(-2.0) / (T(1.0) + s);
  T w[2] = {f * x[0], f * x[1]};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        T v(0.0);
        if (i == j) v += w[k];
        if (i == k) v += w[j];
        if (j == k) v -= w[i];
        G[i][j][k] = v;
      }
}

/// omega(U) = p^{-1} (U_fib + Gamma(U_x) p) expressed in the elementary
/// basis; returns the 4 x 6 component matrix.
struct FrameOmega {
  FrameBase kind;
  template <class T>
  TMat<T> operator()(int, const TVec<T>& z) const {
    TVec<T> x{z[0], z[1]};
    T G[2][2][2];
    if (kind == FrameBase::Sphere)
      base_gamma_sphere(x, G);
    else
      base_gamma_flat(x, G);
    TMat<T> p(2, 2);
    p(0, 0) = z[2];
    p(0, 1) = z[3];
    p(1, 0) = z[4];
    p(1, 1) = z[5];
    const TMat<T> pinv = inverse2(p);
    TMat<T> W(kFiberDim, kTotalDim);
    // horizontal slots: p^{-1} (Gamma(d_i) p)
    for (int i = 0; i < 2; ++i) {
      TMat<T> corr(2, 2);
      for (int k = 0; k < 2; ++k)
        for (int a = 0; a < 2; ++a) corr(k, a) = G[k][i][0] * p(0, a) + G[k][i][1] * p(1, a);
      const TMat<T> m = matmul(pinv, corr);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) W(eidx(r, c), i) = m(r, c);
    }
    // fiber slots: p^{-1} E_(k,a)
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < 2; ++a) {
        const int mu = 2 + eidx(k, a);
        for (int r = 0; r < 2; ++r) W(eidx(r, a), mu) = pinv(r, k);
      }
    return W;
  }
};

/// sigma(E_m) = (0, p E_m): 6 x 4.
struct FrameSigma {
  template <class T>
  TMat<T> operator()(int, const TVec<T>& z) const {
    TMat<T> S(kTotalDim, kFiberDim);
    // (p E_{ab})^k_c = p^k_a delta_{bc}
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int m = eidx(a, b);
        for (int k = 0; k < 2; ++k) S(2 + eidx(k, b), m) = z[static_cast<std::size_t>(2 + eidx(k, a))];
      }
    return S;
  }
};

struct FrameProjection {
  int select_chart(int chart, const Eigen::VectorXd&) const { return chart; }
  template <class T>
  TVec<T> map(int, const TVec<T>& z, int) const {
    return TVec<T>{z[0], z[1]};
  }
};

struct FrameAction {
  int select_chart(int chart, const Eigen::VectorXd&, const Eigen::MatrixXcd&) const { return chart; }
  template <class T>
  TVec<T> map(int, const TVec<T>& z, const Eigen::MatrixXcd& g, int) const {
    TVec<T> out(z);
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < 2; ++a) {
        T acc(0.0);
        for (int j = 0; j < 2; ++j) acc += z[static_cast<std::size_t>(2 + eidx(k, j))] * T(g(j, a).real());
        out[static_cast<std::size_t>(2 + eidx(k, a))] = acc;
      }
    return out;
  }
};

/// Sphere chart transition lifted to frames: y = x/|x|^2, p' = J(x) p where
/// J = (I - 2 xhat xhat^T)/|x|^2 is the inversion Jacobian.
struct FrameSphereTransition {
  template <class T>
  TVec<T> operator()(const TVec<T>& z) const {
    const T s = z[0] * z[0] + z[1] * z[1];
    TMat<T> J(2, 2);
    J(0, 0) = (s - T(2.0) * z[0] * z[0]) / (s * s);
    J(1, 1) = (s - T(2.0) * z[1] * z[1]) / (s * s);
    J(0, 1) = (T(0.0) - T(2.0) * z[0] * z[1]) / (s * s);
    J(1, 0) = J(0, 1);
    TVec<T> out(6);
    out[0] = z[0] / s;
    out[1] = z[1] / s;
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < 2; ++a)
        out[static_cast<std::size_t>(2 + eidx(k, a))] =
            J(k, 0) * z[static_cast<std::size_t>(2 + eidx(0, a))] +
            J(k, 1) * z[static_cast<std::size_t>(2 + eidx(1, a))];
    return out;
  }
};

/// Torus shifts leave frames untouched.
class FrameShiftTransition final : public ChartTransition {
public:
  explicit FrameShiftTransition(Eigen::VectorXd shift) : shift_(std::move(shift)) {}
  Eigen::VectorXd value(const Eigen::VectorXd& z) const override {
    Eigen::VectorXd out = z;
    for (int i = 0; i < shift_.size(); ++i) out[i] = std::remainder(z[i] + shift_[i], 2.0 * M_PI);
    return out;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& z) const override {
    return Eigen::MatrixXd::Identity(z.size(), z.size());
  }

private:
  Eigen::VectorXd shift_;
};

/// The lift connections, with coefficients assembled by expanding coordinate
/// fields in the frame {H_i, (E_m)^*} and applying the defining relations.
class FrameLiftConnection final : public AffineConnection {
public:
  FrameLiftConnection(const ChartedManifold* total, std::shared_ptr<AffineConnection> base_conn,
                      bool canonical, bool flat_base)
      : AffineConnection(total, canonical || flat_base),
        base_(std::move(base_conn)),
        canonical_(canonical) {}

  Tensor3 christoffel(int chart, const Eigen::VectorXd& z) const override {
    const Eigen::MatrixXd F = frame(chart, z);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(F);
    // derivative of the expansion coefficients C = F^{-1} along each coordinate
    std::vector<Eigen::MatrixXd> dC(kTotalDim);
    const double h = fd_step(z);
    for (int nu = 0; nu < kTotalDim; ++nu) {
      Eigen::VectorXd zp = z, zm = z;
      zp[nu] += h;
      zm[nu] -= h;
      dC[static_cast<std::size_t>(nu)] =
          (frame(chart, zp).inverse() - frame(chart, zm).inverse()) / (2.0 * h);
    }
    const Eigen::MatrixXd C = lu.inverse();
    std::vector<std::vector<Eigen::VectorXd>> tab(kTotalDim, std::vector<Eigen::VectorXd>(kTotalDim));
    for (int B = 0; B < kTotalDim; ++B)
      for (int A = 0; A < kTotalDim; ++A) tab[static_cast<std::size_t>(B)][static_cast<std::size_t>(A)] = table(chart, z, B, A);
    Tensor3 out(kTotalDim, Eigen::MatrixXd::Zero(kTotalDim, kTotalDim));
    for (int nu = 0; nu < kTotalDim; ++nu)
      for (int lam = 0; lam < kTotalDim; ++lam) {
        Eigen::VectorXd v = F * dC[static_cast<std::size_t>(nu)].col(lam);
        for (int B = 0; B < kTotalDim; ++B)
          for (int A = 0; A < kTotalDim; ++A)
            v += C(B, nu) * C(A, lam) * tab[static_cast<std::size_t>(B)][static_cast<std::size_t>(A)];
        for (int mu = 0; mu < kTotalDim; ++mu) out[static_cast<std::size_t>(mu)](nu, lam) = v[mu];
      }
    return out;
  }

private:
  static Eigen::Matrix2d frame_matrix(const Eigen::VectorXd& z) {
    Eigen::Matrix2d p;
    p << z[2], z[3], z[4], z[5];
    return p;
  }

  Eigen::VectorXd lift_at(int chart, const Eigen::VectorXd& z, int i) const {
    const Tensor3 Gb = base_->christoffel(chart, z.head(kBaseDim));
    const Eigen::Matrix2d p = frame_matrix(z);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(kTotalDim);
    v[i] = 1.0;
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < 2; ++a) {
        double fib = 0.0;
        for (int j = 0; j < 2; ++j) fib -= Gb[static_cast<std::size_t>(k)](i, j) * p(j, a);
        v[2 + eidx(k, a)] = fib;
      }
    return v;
  }

  static Eigen::VectorXd fundamental_at(const Eigen::VectorXd& z, const Eigen::Matrix2d& Em) {
    const Eigen::Matrix2d p = frame_matrix(z);
    const Eigen::Matrix2d pe = p * Em;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(kTotalDim);
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < 2; ++a) v[2 + eidx(k, a)] = pe(k, a);
    return v;
  }

  static Eigen::Matrix2d elementary(int m) {
    Eigen::Matrix2d e = Eigen::Matrix2d::Zero();
    e(m / 2, m % 2) = 1.0;
    return e;
  }

  Eigen::MatrixXd frame(int chart, const Eigen::VectorXd& z) const {
    Eigen::MatrixXd F(kTotalDim, kTotalDim);
    for (int i = 0; i < kBaseDim; ++i) F.col(i) = lift_at(chart, z, i);
    for (int m = 0; m < kFiberDim; ++m) F.col(kBaseDim + m) = fundamental_at(z, elementary(m));
    return F;
  }

  Eigen::VectorXd table(int chart, const Eigen::VectorXd& z, int B, int A) const {
    if (B >= kBaseDim && A >= kBaseDim)
      return fundamental_at(z, elementary(B - kBaseDim) * elementary(A - kBaseDim));
    if (B >= kBaseDim || A >= kBaseDim) return Eigen::VectorXd::Zero(kTotalDim);
    const int i = B, j = A;
    const Eigen::VectorXd x = z.head(kBaseDim);
    const Tensor3 Gb = base_->christoffel(chart, x);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(kTotalDim);
    for (int k = 0; k < 2; ++k) out += Gb[static_cast<std::size_t>(k)](i, j) * lift_at(chart, z, k);
    if (canonical_) {
      // gamma(R(-, d_i) d_j): S^k_l = k-component of R(d_l, d_i) d_j
      Eigen::Matrix2d S;
      for (int l = 0; l < 2; ++l) {
        const Eigen::VectorXd r = base_->curvature(chart, x, Eigen::VectorXd::Unit(2, l),
                                                   Eigen::VectorXd::Unit(2, i), Eigen::VectorXd::Unit(2, j));
        S(0, l) = r[0];
        S(1, l) = r[1];
      }
      const Eigen::Matrix2d p = frame_matrix(z);
      out += fundamental_at(z, p.inverse() * S * p);
    }
    return out;
  }

  std::shared_ptr<AffineConnection> base_;
  bool canonical_;
};

}  // namespace

FrameBundleParts make_frame_bundle(std::shared_ptr<ChartedManifold> base,
                                   std::shared_ptr<AffineConnection> base_connection,
                                   std::shared_ptr<LieGroup> gl2, FrameBase kind) {
  FrameBundleParts parts;
  const int nb = base->num_charts();
  auto total = std::make_shared<ChartedManifold>("frames(" + base->name() + ")", kTotalDim);
  for (int c = 0; c < nb; ++c) {
    const Chart& bc = base->chart(c);
    total->add_chart(
        {"frame-" + bc.name,
         [contains = bc.contains](const Eigen::VectorXd& z) {
           const double det = z[2] * z[5] - z[3] * z[4];
           return contains(z.head(2)) && std::abs(det) > 0.05 && z.tail(4).cwiseAbs().maxCoeff() < 8.0;
         },
         [comfort = bc.comfort](const Eigen::VectorXd& z) { return comfort(z.head(2)); }});
  }
  if (kind == FrameBase::Sphere) {
    total->add_transition(0, 1, std::make_shared<AnalyticTransition<FrameSphereTransition>>(FrameSphereTransition{}));
    total->add_transition(1, 0, std::make_shared<AnalyticTransition<FrameSphereTransition>>(FrameSphereTransition{}));
  } else {
    const double off[4][2] = {{0.0, 0.0}, {M_PI, 0.0}, {0.0, M_PI}, {M_PI, M_PI}};
    for (int a = 0; a < nb; ++a)
      for (int b = 0; b < nb; ++b) {
        if (a == b) continue;
        Eigen::VectorXd shift = Eigen::VectorXd::Zero(kTotalDim);
        shift[0] = off[a][0] - off[b][0];
        shift[1] = off[a][1] - off[b][1];
        total->add_transition(a, b, std::make_shared<FrameShiftTransition>(shift.head(2)));
      }
  }

  auto omega = make_matrix_field(FrameOmega{kind}, kFiberDim, kTotalDim);
  auto sigma = make_matrix_field(FrameSigma{}, kTotalDim, kFiberDim);
  auto projection = make_map(total.get(), base.get(), FrameProjection{});
  auto action = std::make_shared<AnalyticAction<FrameAction>>(total.get(), FrameAction{});
  auto bundle = std::make_shared<PrincipalBundle>(total, base, gl2, projection, action, sigma);
  parts.total = total;
  parts.bundle = bundle;
  parts.omega = omega;
  parts.form = std::make_shared<ConnectionForm>(bundle, omega);
  const bool flat = (kind == FrameBase::Flat);
  parts.horizontal = std::make_shared<FrameLiftConnection>(total.get(), base_connection, false, flat);
  parts.canonical = std::make_shared<FrameLiftConnection>(total.get(), base_connection, true, flat);
  return parts;
}

}  // namespace fiberlab
