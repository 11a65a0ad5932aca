#pragma once

#include <cassert>
#include <vector>

namespace fiberlab {

/// Scalar-generic dense containers used by the analytic closures, so that a
/// single formula serves both plain evaluation (T = double) and derivative
/// extraction (T = Jet). Dimensions stay tiny (<= 6), nothing here is tuned.
template <class T>
using TVec = std::vector<T>;

template <class T>
struct TMat {
  TMat() : rows(0), cols(0) {}
  TMat(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c), T(0.0)) {}

  T& operator()(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
  const T& operator()(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }

  int rows, cols;
  std::vector<T> data;
};

template <class T>
TMat<T> matmul(const TMat<T>& a, const TMat<T>& b) {
  assert(a.cols == b.rows);
  TMat<T> r(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const T& aik = a(i, k);
      for (int j = 0; j < b.cols; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

template <class T>
TMat<T> transpose(const TMat<T>& a) {
  TMat<T> r(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r(j, i) = a(i, j);
  return r;
}

template <class T>
TMat<T> inverse2(const TMat<T>& a) {
  assert(a.rows == 2 && a.cols == 2);
  const T det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  TMat<T> r(2, 2);
  r(0, 0) = a(1, 1) / det;
  r(0, 1) = T(0.0) - a(0, 1) / det;
  r(1, 0) = T(0.0) - a(1, 0) / det;
  r(1, 1) = a(0, 0) / det;
  return r;
}

/// Quaternion over a generic scalar; the S^3/SU(2) charts are built on it.
template <class T>
struct TQuat {
  T w, x, y, z;

  TQuat() : w(0.0), x(0.0), y(0.0), z(0.0) {}
  TQuat(T w_, T x_, T y_, T z_) : w(w_), x(x_), y(y_), z(z_) {}

  TQuat conj() const { return TQuat(w, T(0.0) - x, T(0.0) - y, T(0.0) - z); }

  friend TQuat operator*(const TQuat& a, const TQuat& b) {
    return TQuat(a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                 a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                 a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                 a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w);
  }
  friend TQuat operator+(const TQuat& a, const TQuat& b) {
    return TQuat(a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z);
  }
  friend TQuat operator*(const T& s, const TQuat& q) { return TQuat(s * q.w, s * q.x, s * q.y, s * q.z); }
};

/// Inverse stereographic chart on the unit quaternions. Chart 0 projects from
/// w = -1, chart 1 from w = +1; transition is v -> v/|v|^2.
template <class T>
TQuat<T> quat_from_stereo(const TVec<T>& v, int chart) {
  const T s = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const T inv = T(1.0) / (T(1.0) + s);
  T w = (T(1.0) - s) * inv;
  if (chart == 1) w = T(0.0) - w;
  return TQuat<T>(w, T(2.0) * v[0] * inv, T(2.0) * v[1] * inv, T(2.0) * v[2] * inv);
}

/// d(stereo coords)/d(quaternion) applied to a tangent quaternion dq at q.
/// Chart 0: v = (x,y,z)/(1+w); chart 1: v = (x,y,z)/(1-w).
template <class T>
TVec<T> stereo_push(const TQuat<T>& q, const TQuat<T>& dq, int chart) {
  const T denom = (chart == 0) ? (T(1.0) + q.w) : (T(1.0) - q.w);
  const T dden = (chart == 0) ? dq.w : (T(0.0) - dq.w);
  const T inv = T(1.0) / denom;
  TVec<T> r(3);
  r[0] = (dq.x - q.x * inv * dden) * inv;
  r[1] = (dq.y - q.y * inv * dden) * inv;
  r[2] = (dq.z - q.z * inv * dden) * inv;
  return r;
}

template <class T>
TVec<T> stereo_coords(const TQuat<T>& q, int chart) {
  const T denom = (chart == 0) ? (T(1.0) + q.w) : (T(1.0) - q.w);
  TVec<T> r(3);
  r[0] = q.x / denom;
  r[1] = q.y / denom;
  r[2] = q.z / denom;
  return r;
}

/// Derivative of q(v) with respect to stereo coordinate i (unit quaternions).
template <class T>
TQuat<T> quat_stereo_partial(const TVec<T>& v, int chart, int i) {
  const T s = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const T inv = T(1.0) / (T(1.0) + s);
  const T inv2 = inv * inv;
  const T vi = v[i];
  // d/dv_i [(1-s)/(1+s)] = -4 v_i/(1+s)^2 ;  d/dv_i [2 v_j/(1+s)] = 2 d_ij/(1+s) - 4 v_j v_i /(1+s)^2
  T dw = T(-4.0) * vi * inv2;
  if (chart == 1) dw = T(0.0) - dw;
  TQuat<T> r;
  r.w = dw;
  T* comp[3] = {&r.x, &r.y, &r.z};
  const T* vc[3] = {&v[0], &v[1], &v[2]};
  for (int j = 0; j < 3; ++j) {
    *comp[j] = T(-4.0) * (*vc[j]) * vi * inv2;
    if (j == i) *comp[j] += T(2.0) * inv;
  }
  return r;
}

}  // namespace fiberlab
