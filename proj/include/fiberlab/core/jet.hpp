#pragma once

#include <array>
#include <cassert>
#include <cmath>

namespace fiberlab {

/// First-order forward-mode dual number with fixed partial capacity.
/// Evaluating an analytic closure with Jet arguments yields the closure's
/// exact gradient, which is what the geometry kernel uses wherever a
/// derivative of a built-in quantity is required.
class Jet {
public:
  static constexpr int kMaxVars = 8;

  Jet() : a_(0.0), n_(0) { v_.fill(0.0); }
  Jet(double a) : a_(a), n_(0) { v_.fill(0.0); }  // NOLINT: implicit by design
  Jet(double a, int var, int nvars) : a_(a), n_(nvars) {
    assert(nvars <= kMaxVars && var < nvars);
    v_.fill(0.0);
    v_[static_cast<std::size_t>(var)] = 1.0;
  }

  double value() const { return a_; }
  int nvars() const { return n_; }
  double d(int i) const { return v_[static_cast<std::size_t>(i)]; }
  double& d(int i) { return v_[static_cast<std::size_t>(i)]; }
  void set_nvars(int n) { n_ = n; }

  Jet operator-() const {
    Jet r(*this);
    r.a_ = -r.a_;
    for (int i = 0; i < r.n_; ++i) r.v_[static_cast<std::size_t>(i)] = -r.v_[static_cast<std::size_t>(i)];
    return r;
  }

  Jet& operator+=(const Jet& o) {
    grow(o.n_);
    a_ += o.a_;
    for (int i = 0; i < o.n_; ++i) v_[static_cast<std::size_t>(i)] += o.v_[static_cast<std::size_t>(i)];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    grow(o.n_);
    a_ -= o.a_;
    for (int i = 0; i < o.n_; ++i) v_[static_cast<std::size_t>(i)] -= o.v_[static_cast<std::size_t>(i)];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    grow(o.n_);
    for (int i = 0; i < n_; ++i) {
      v_[static_cast<std::size_t>(i)] =
          v_[static_cast<std::size_t>(i)] * o.a_ + a_ * (i < o.n_ ? o.v_[static_cast<std::size_t>(i)] : 0.0);
    }
    a_ *= o.a_;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    grow(o.n_);
    const double inv = 1.0 / o.a_;
    const double q = a_ * inv;
    for (int i = 0; i < n_; ++i) {
      v_[static_cast<std::size_t>(i)] =
          (v_[static_cast<std::size_t>(i)] - q * (i < o.n_ ? o.v_[static_cast<std::size_t>(i)] : 0.0)) * inv;
    }
    a_ = q;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }

  friend bool operator<(const Jet& a, const Jet& b) { return a.a_ < b.a_; }
  friend bool operator>(const Jet& a, const Jet& b) { return a.a_ > b.a_; }
  friend bool operator<=(const Jet& a, const Jet& b) { return a.a_ <= b.a_; }
  friend bool operator>=(const Jet& a, const Jet& b) { return a.a_ >= b.a_; }

private:
  void grow(int n) {
    if (n > n_) n_ = n;
  }

  double a_;
  int n_;
  std::array<double, kMaxVars> v_;

  friend Jet chain(double f, double df, const Jet& x);
};

inline Jet chain(double f, double df, const Jet& x) {
  Jet r(x);
  r.a_ = f;
  for (int i = 0; i < r.n_; ++i) r.v_[static_cast<std::size_t>(i)] *= df;
  return r;
}

inline Jet sqrt(const Jet& x) {
  const double s = std::sqrt(x.value());
  return chain(s, 0.5 / s, x);
}
inline Jet sin(const Jet& x) { return chain(std::sin(x.value()), std::cos(x.value()), x); }
inline Jet cos(const Jet& x) { return chain(std::cos(x.value()), -std::sin(x.value()), x); }
inline Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  return chain(e, e, x);
}
inline Jet log(const Jet& x) { return chain(std::log(x.value()), 1.0 / x.value(), x); }
inline Jet atan(const Jet& x) { return chain(std::atan(x.value()), 1.0 / (1.0 + x.value() * x.value()), x); }

inline Jet atan2(const Jet& y, const Jet& x) {
  const double vx = x.value(), vy = y.value();
  const double denom = vx * vx + vy * vy;
  Jet r = chain(0.0, vx / denom, y) + chain(0.0, -vy / denom, x);
  return r + Jet(std::atan2(vy, vx));
}

// double <-> Jet interop for generic closures
inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

}  // namespace fiberlab
