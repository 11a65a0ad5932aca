#pragma once

#include <memory>

#include "fiberlab/geometry/maps.hpp"
#include "fiberlab/lie/group.hpp"

namespace fiberlab {

/// Right action of the structure group in chart coordinates.
class RightAction {
public:
  virtual ~RightAction() = default;
  virtual ChartPoint act(const ChartPoint& p, const Eigen::MatrixXcd& g) const = 0;
  /// Pushforward (R_g)_* at p into the given target chart; default central FD.
  virtual Eigen::MatrixXd differential_into(const ChartPoint& p, const Eigen::MatrixXcd& g,
                                            int dst_chart) const;
  std::pair<int, Eigen::MatrixXd> differential(const ChartPoint& p, const Eigen::MatrixXcd& g) const {
    const int c = act(p, g).chart;
    return {c, differential_into(p, g, c)};
  }
  virtual const ChartedManifold& total() const = 0;
};

/// P(M, G): charted total space, base, structure group, projection, right
/// action and the vertical frame sigma (columns sigma_p(e_a), exact partials).
class PrincipalBundle {
public:
  PrincipalBundle(std::shared_ptr<const ChartedManifold> total, std::shared_ptr<const ChartedManifold> base,
                  std::shared_ptr<const LieGroup> group, std::shared_ptr<const SmoothMap> projection,
                  std::shared_ptr<const RightAction> action,
                  std::shared_ptr<const MatrixFieldOnCharts> sigma)
      : total_(std::move(total)),
        base_(std::move(base)),
        group_(std::move(group)),
        pi_(std::move(projection)),
        action_(std::move(action)),
        sigma_(std::move(sigma)) {}

  const ChartedManifold& total() const { return *total_; }
  const ChartedManifold& base() const { return *base_; }
  const LieGroup& group() const { return *group_; }
  const SmoothMap& projection() const { return *pi_; }
  std::shared_ptr<const SmoothMap> projection_ptr() const { return pi_; }
  const RightAction& action() const { return *action_; }
  const MatrixFieldOnCharts& sigma_field() const { return *sigma_; }

  /// sigma_p as a (dim P) x (dim G) matrix of fundamental vectors.
  Eigen::MatrixXd sigma(int chart, const Eigen::VectorXd& x) const { return sigma_->value(chart, x); }
  /// Fundamental vector field B* at p.
  Eigen::VectorXd fundamental(const ChartPoint& p, const Eigen::VectorXd& B) const {
    return sigma(p.chart, p.x) * B;
  }

private:
  std::shared_ptr<const ChartedManifold> total_;
  std::shared_ptr<const ChartedManifold> base_;
  std::shared_ptr<const LieGroup> group_;
  std::shared_ptr<const SmoothMap> pi_;
  std::shared_ptr<const RightAction> action_;
  std::shared_ptr<const MatrixFieldOnCharts> sigma_;
};

/// Action adapter for a scalar-generic functor.
/// F protocol:
///   int select_chart(int chart, const Eigen::VectorXd& x, const Eigen::MatrixXcd& g) const;
///   template <class T> TVec<T> map(int chart, const TVec<T>& x, const Eigen::MatrixXcd& g, int dst) const;
template <class F>
class AnalyticAction final : public RightAction {
public:
  AnalyticAction(const ChartedManifold* total, F f) : total_(total), f_(std::move(f)) {}

  ChartPoint act(const ChartPoint& p, const Eigen::MatrixXcd& g) const override {
    const int dst = f_.select_chart(p.chart, p.x, g);
    TVec<double> xv(p.x.data(), p.x.data() + p.x.size());
    TVec<double> y = f_.map(p.chart, xv, g, dst);
    return {dst, Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()))};
  }

  Eigen::MatrixXd differential_into(const ChartPoint& p, const Eigen::MatrixXcd& g,
                                    int dst_chart) const override {
    const int n = static_cast<int>(p.x.size());
    TVec<Jet> xj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xj[static_cast<std::size_t>(i)] = Jet(p.x[i], i, n);
    TVec<Jet> y = f_.map(p.chart, xj, g, dst_chart);
    Eigen::MatrixXd J(static_cast<int>(y.size()), n);
    for (int i = 0; i < static_cast<int>(y.size()); ++i)
      for (int k = 0; k < n; ++k) J(i, k) = y[static_cast<std::size_t>(i)].d(k);
    return J;
  }

  const ChartedManifold& total() const override { return *total_; }

private:
  const ChartedManifold* total_;
  F f_;
};

}  // namespace fiberlab
