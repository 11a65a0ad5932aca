#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fiberlab/core/errors.hpp"
#include "fiberlab/core/jet.hpp"
#include "fiberlab/core/tsmall.hpp"

namespace fiberlab {

struct ChartPoint {
  int chart = 0;
  Eigen::VectorXd x;
};

/// Matrix-valued field given per chart, with exact coordinate partials.
/// Metrics, connection forms, vertical frames, covectors and bilinear forms
/// are all instances (a covector is a 1 x dim matrix).
class MatrixFieldOnCharts {
public:
  virtual ~MatrixFieldOnCharts() = default;
  virtual int rows() const = 0;
  virtual int cols() const = 0;
  virtual Eigen::MatrixXd value(int chart, const Eigen::VectorXd& x) const = 0;
  /// partials[k](i,j) = d value_ij / d x_k
  virtual std::vector<Eigen::MatrixXd> partials(int chart, const Eigen::VectorXd& x) const;
  virtual void value_and_partials(int chart, const Eigen::VectorXd& x, Eigen::MatrixXd& val,
                                  std::vector<Eigen::MatrixXd>& parts) const;
};

/// Adapter turning one scalar-generic functor into a MatrixFieldOnCharts with
/// derivative extraction through Jet evaluation.
/// F protocol: template <class T> TMat<T> operator()(int chart, const TVec<T>& x) const;
template <class F>
class AnalyticMatrixField final : public MatrixFieldOnCharts {
public:
  AnalyticMatrixField(F f, int rows, int cols) : f_(std::move(f)), rows_(rows), cols_(cols) {}

  int rows() const override { return rows_; }
  int cols() const override { return cols_; }

  Eigen::MatrixXd value(int chart, const Eigen::VectorXd& x) const override {
    TVec<double> xv(x.data(), x.data() + x.size());
    TMat<double> m = f_(chart, xv);
    Eigen::MatrixXd out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = m(i, j);
    return out;
  }

  void value_and_partials(int chart, const Eigen::VectorXd& x, Eigen::MatrixXd& val,
                          std::vector<Eigen::MatrixXd>& parts) const override {
    const int n = static_cast<int>(x.size());
    TVec<Jet> xj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xj[static_cast<std::size_t>(i)] = Jet(x[i], i, n);
    TMat<Jet> m = f_(chart, xj);
    val.resize(rows_, cols_);
    parts.assign(static_cast<std::size_t>(n), Eigen::MatrixXd(rows_, cols_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        const Jet& e = m(i, j);
        val(i, j) = e.value();
        for (int k = 0; k < n; ++k) parts[static_cast<std::size_t>(k)](i, j) = e.d(k);
      }
  }

  std::vector<Eigen::MatrixXd> partials(int chart, const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd val;
    std::vector<Eigen::MatrixXd> parts;
    value_and_partials(chart, x, val, parts);
    return parts;
  }

private:
  F f_;
  int rows_, cols_;
};

template <class F>
std::shared_ptr<MatrixFieldOnCharts> make_matrix_field(F f, int rows, int cols) {
  return std::make_shared<AnalyticMatrixField<F>>(std::move(f), rows, cols);
}

/// Runtime matrix field without an analytic closure; partials fall back to
/// central differences with the documented relative step.
class FunctionalMatrixField final : public MatrixFieldOnCharts {
public:
  using value_fn = std::function<Eigen::MatrixXd(int, const Eigen::VectorXd&)>;
  FunctionalMatrixField(value_fn f, int rows, int cols) : f_(std::move(f)), rows_(rows), cols_(cols) {}
  int rows() const override { return rows_; }
  int cols() const override { return cols_; }
  Eigen::MatrixXd value(int chart, const Eigen::VectorXd& x) const override { return f_(chart, x); }

private:
  value_fn f_;
  int rows_, cols_;
};

/// Transition map between two charts of the same manifold.
class ChartTransition {
public:
  virtual ~ChartTransition() = default;
  virtual Eigen::VectorXd value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
};

template <class F>
class AnalyticTransition final : public ChartTransition {
public:
  explicit AnalyticTransition(F f) : f_(std::move(f)) {}
  Eigen::VectorXd value(const Eigen::VectorXd& x) const override {
    TVec<double> xv(x.data(), x.data() + x.size());
    TVec<double> y = f_(xv);
    return Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const override {
    const int n = static_cast<int>(x.size());
    TVec<Jet> xj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xj[static_cast<std::size_t>(i)] = Jet(x[i], i, n);
    TVec<Jet> y = f_(xj);
    Eigen::MatrixXd J(static_cast<int>(y.size()), n);
    for (int i = 0; i < static_cast<int>(y.size()); ++i)
      for (int k = 0; k < n; ++k) J(i, k) = y[static_cast<std::size_t>(i)].d(k);
    return J;
  }

private:
  F f_;
};

struct Chart {
  std::string name;
  std::function<bool(const Eigen::VectorXd&)> contains;
  /// Lower is better-centered; drives handover policy.
  std::function<double(const Eigen::VectorXd&)> comfort;
};

/// A manifold presented through overlapping coordinate charts, with a metric
/// field and transition maps. Immutable once assembled.
class ChartedManifold {
public:
  ChartedManifold(std::string name, int dim) : name_(std::move(name)), dim_(dim) {}

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int num_charts() const { return static_cast<int>(charts_.size()); }
  const Chart& chart(int i) const { return charts_[static_cast<std::size_t>(i)]; }

  int add_chart(Chart c) {
    charts_.push_back(std::move(c));
    return static_cast<int>(charts_.size()) - 1;
  }
  void add_transition(int from, int to, std::shared_ptr<const ChartTransition> t) {
    transitions_[{from, to}] = std::move(t);
  }
  bool has_transition(int from, int to) const { return transitions_.count({from, to}) > 0; }
  const ChartTransition& transition(int from, int to) const;

  /// Coordinates of p expressed in chart `to` (identity if already there).
  Eigen::VectorXd to_chart(const ChartPoint& p, int to) const;
  /// Jacobian of the (from -> to) transition at x.
  Eigen::MatrixXd transition_jacobian(int from, int to, const Eigen::VectorXd& x) const;
  /// Re-express p in whichever chart is most comfortable.
  ChartPoint normalize(const ChartPoint& p) const;
  bool contains(const ChartPoint& p) const {
    return p.chart >= 0 && p.chart < num_charts() && charts_[static_cast<std::size_t>(p.chart)].contains(p.x);
  }

  void set_metric(std::shared_ptr<const MatrixFieldOnCharts> g) { metric_ = std::move(g); }
  bool has_metric() const { return metric_ != nullptr; }
  const MatrixFieldOnCharts& metric() const { return *metric_; }
  std::shared_ptr<const MatrixFieldOnCharts> metric_ptr() const { return metric_; }

  /// Optional ambient embedding, used by validation tests.
  struct Embedding {
    std::function<Eigen::VectorXd(const ChartPoint&)> embed;
    std::function<Eigen::MatrixXd(const ChartPoint&)> tangent;  // ambient-dim x dim Jacobian
  };
  void set_embedding(Embedding e) { embedding_ = std::make_shared<Embedding>(std::move(e)); }
  const Embedding* embedding() const { return embedding_.get(); }

private:
  std::string name_;
  int dim_;
  std::vector<Chart> charts_;
  std::map<std::pair<int, int>, std::shared_ptr<const ChartTransition>> transitions_;
  std::shared_ptr<const MatrixFieldOnCharts> metric_;
  std::shared_ptr<Embedding> embedding_;
};

/// Relative finite-difference step at coordinate scale |x| (central scheme).
inline double fd_step(const Eigen::VectorXd& x) {
  return 1e-5 * std::max(1.0, x.cwiseAbs().maxCoeff());
}

}  // namespace fiberlab
