#pragma once

#include <memory>

#include "fiberlab/geometry/chart.hpp"

namespace fiberlab {

/// Smooth map between charted manifolds: values plus pushforward.
class SmoothMap {
public:
  SmoothMap(const ChartedManifold* src, const ChartedManifold* dst) : src_(src), dst_(dst) {}
  virtual ~SmoothMap() = default;

  const ChartedManifold& source() const { return *src_; }
  const ChartedManifold& target() const { return *dst_; }

  virtual ChartPoint value(const ChartPoint& p) const = 0;

  /// Pushforward expressed in the given target chart; default central FD.
  virtual Eigen::MatrixXd differential_into(const ChartPoint& p, int dst_chart) const;

  /// Pushforward into whatever chart value(p) selects.
  std::pair<int, Eigen::MatrixXd> differential(const ChartPoint& p) const {
    const int c = value(p).chart;
    return {c, differential_into(p, c)};
  }

private:
  const ChartedManifold* src_;
  const ChartedManifold* dst_;
};

/// Map from one scalar-generic functor.
/// F protocol:
///   int select_chart(int src_chart, const Eigen::VectorXd& x) const;
///   template <class T> TVec<T> map(int src_chart, const TVec<T>& x, int dst_chart) const;
template <class F>
class AnalyticMap final : public SmoothMap {
public:
  AnalyticMap(const ChartedManifold* src, const ChartedManifold* dst, F f)
      : SmoothMap(src, dst), f_(std::move(f)) {}

  ChartPoint value(const ChartPoint& p) const override {
    const int dst_chart = f_.select_chart(p.chart, p.x);
    TVec<double> xv(p.x.data(), p.x.data() + p.x.size());
    TVec<double> y = f_.map(p.chart, xv, dst_chart);
    return {dst_chart, Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()))};
  }

  Eigen::MatrixXd differential_into(const ChartPoint& p, int dst_chart) const override {
    const int n = static_cast<int>(p.x.size());
    TVec<Jet> xj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xj[static_cast<std::size_t>(i)] = Jet(p.x[i], i, n);
    TVec<Jet> y = f_.map(p.chart, xj, dst_chart);
    Eigen::MatrixXd J(static_cast<int>(y.size()), n);
    for (int i = 0; i < static_cast<int>(y.size()); ++i)
      for (int k = 0; k < n; ++k) J(i, k) = y[static_cast<std::size_t>(i)].d(k);
    return J;
  }

private:
  F f_;
};

template <class F>
std::shared_ptr<SmoothMap> make_map(const ChartedManifold* src, const ChartedManifold* dst, F f) {
  return std::make_shared<AnalyticMap<F>>(src, dst, std::move(f));
}

/// Runtime map defined by a plain function; derivatives by central FD.
class FunctionalMap final : public SmoothMap {
public:
  using value_fn = std::function<ChartPoint(const ChartPoint&)>;
  FunctionalMap(const ChartedManifold* src, const ChartedManifold* dst, value_fn f)
      : SmoothMap(src, dst), f_(std::move(f)) {}
  ChartPoint value(const ChartPoint& p) const override { return f_(p); }

private:
  value_fn f_;
};

/// Composition g(f(.)) with exact chain rule on the differentials.
class ComposedMap final : public SmoothMap {
public:
  ComposedMap(std::shared_ptr<const SmoothMap> f, std::shared_ptr<const SmoothMap> g)
      : SmoothMap(&f->source(), &g->target()), f_(std::move(f)), g_(std::move(g)) {}

  ChartPoint value(const ChartPoint& p) const override { return g_->value(f_->value(p)); }

  Eigen::MatrixXd differential_into(const ChartPoint& p, int dst_chart) const override {
    const auto [mid_chart, Jf] = f_->differential(p);
    ChartPoint mid = f_->value(p);
    mid.x = f_->target().to_chart(mid, mid_chart);
    mid.chart = mid_chart;
    const Eigen::MatrixXd Jg = g_->differential_into(mid, dst_chart);
    return Jg * Jf;
  }

private:
  std::shared_ptr<const SmoothMap> f_;
  std::shared_ptr<const SmoothMap> g_;
};

}  // namespace fiberlab
