#include "fiberlab/stochastic/sde.hpp"

#include <thread>

#include "fiberlab/geometry/ops.hpp"

namespace fiberlab {

namespace {

void append_step(PathSample& path, const ChartedManifold& M, const ChartPoint& from,
                 const Eigen::VectorXd& to_x, double chart_guard) {
  if ((to_x - from.x).cwiseAbs().maxCoeff() > chart_guard)
    throw RefinementError(M.name() + ": step outran the chart guard; refine dt");
  PathStep s;
  s.chart = from.chart;
  s.x0 = from.x;
  s.x1 = to_x;
  path.mutable_steps().push_back(std::move(s));
}

ChartPoint renormalized(const ChartedManifold& M, const ChartPoint& p) {
  const ChartPoint q = M.normalize(p);
  if (!M.contains(q)) throw RefinementError(M.name() + ": path left every chart domain");
  return q;
}

}  // namespace

PathSample simulate_heun(const ChartedManifold& M, const std::vector<Driver>& drivers,
                         const ChartPoint& start, const TimeGrid& grid, RngStream& rng,
                         double chart_guard) {
  PathSample path(&M, grid);
  ChartPoint cur = M.normalize(start);
  path.set_start(cur);
  const double sdt = std::sqrt(grid.dt);
  int n_brownian = 0;
  for (const Driver& d : drivers)
    if (d.kind == Driver::Kind::Brownian) ++n_brownian;
  for (int k = 0; k < grid.steps; ++k) {
    Eigen::VectorXd dW(n_brownian);
    for (int a = 0; a < n_brownian; ++a) dW[a] = sdt * rng.next_normal();
    // predictor (Euler)
    Eigen::VectorXd incr = Eigen::VectorXd::Zero(M.dim());
    int a = 0;
    for (const Driver& d : drivers) {
      const Eigen::VectorXd f = d.field(cur);
      if (d.kind == Driver::Kind::Brownian)
        incr += f * dW[a++];
      else
        incr += f * grid.dt;
    }
    const ChartPoint pred{cur.chart, cur.x + incr};
    // corrector (midpoint average of the coefficients)
    Eigen::VectorXd incr2 = Eigen::VectorXd::Zero(M.dim());
    a = 0;
    for (const Driver& d : drivers) {
      const Eigen::VectorXd f = 0.5 * (d.field(cur) + d.field(pred));
      if (d.kind == Driver::Kind::Brownian)
        incr2 += f * dW[a++];
      else
        incr2 += f * grid.dt;
    }
    append_step(path, M, cur, cur.x + incr2, chart_guard);
    path.mutable_noise().push_back(dW);
    cur = renormalized(M, ChartPoint{cur.chart, cur.x + incr2});
  }
  return path;
}

PathSample brownian_chart(const ChartedManifold& M, const MatrixFieldOnCharts& g,
                          const AffineConnection& levi_civita, const ChartPoint& start,
                          const TimeGrid& grid, RngStream& rng, double chart_guard) {
  PathSample path(&M, grid);
  ChartPoint cur = M.normalize(start);
  path.set_start(cur);
  const int n = M.dim();
  const double sdt = std::sqrt(grid.dt);
  for (int k = 0; k < grid.steps; ++k) {
    const Eigen::MatrixXd gval = g.value(cur.chart, cur.x);
    const Eigen::MatrixXd gi = gval.inverse();
    const Tensor3 gamma = levi_civita.christoffel(cur.chart, cur.x);
    Eigen::VectorXd drift(n);
    for (int i = 0; i < n; ++i) drift[i] = -0.5 * (gi * gamma[static_cast<std::size_t>(i)]).trace();
    const Eigen::MatrixXd diffusion = inverse_sqrt(gval);
    Eigen::VectorXd dW(n);
    for (int i = 0; i < n; ++i) dW[i] = sdt * rng.next_normal();
    const Eigen::VectorXd next = cur.x + drift * grid.dt + diffusion * dW;
    append_step(path, M, cur, next, chart_guard);
    path.mutable_noise().push_back(dW);
    cur = renormalized(M, ChartPoint{cur.chart, next});
  }
  return path;
}

std::pair<PathSample, PathSample> brownian_development(const Scenario& sc, const ChartPoint& start,
                                                       const TimeGrid& grid, RngStream& rng) {
  const int dm = sc.base->dim();
  {
    // the construction requires an orthonormal initial frame
    const ChartPoint down = sc.bundle->projection().value(start);
    const Eigen::MatrixXd g = sc.base_metric->value(down.chart, down.x);
    Eigen::MatrixXd fr(dm, dm);
    for (int i = 0; i < dm; ++i)
      for (int a = 0; a < dm; ++a) fr(i, a) = start.x[dm + i * dm + a];
    if ((fr.transpose() * g * fr - Eigen::MatrixXd::Identity(dm, dm)).cwiseAbs().maxCoeff() > 1e-8)
      throw ConditioningError(sc.id + ": initial frame is not orthonormal");
  }
  std::vector<Driver> drivers;
  for (int a = 0; a < dm; ++a) {
    Driver d;
    d.kind = Driver::Kind::Brownian;
    d.label = "frame-" + std::to_string(a);
    d.field = [&sc, a, dm](const ChartPoint& p) -> Eigen::VectorXd {
      // frame vector = column a of the fiber part, lifted horizontally
      Eigen::VectorXd col(dm);
      for (int i = 0; i < dm; ++i) col[i] = p.x[dm + i * dm + a];
      const Eigen::MatrixXd lift = sc.form->horizontal_lift_matrix(p);
      return lift * col;
    };
    drivers.push_back(std::move(d));
  }
  PathSample total = simulate_heun(*sc.total, drivers, start, grid, rng);
  PathSample base = project_path(sc, total);
  return {std::move(total), std::move(base)};
}

ChartPoint orthonormal_frame_start(const Scenario& sc, const ChartPoint& base_point) {
  const int dm = sc.base->dim();
  const Eigen::MatrixXd fr = orthonormal_frame(sc.base_metric->value(base_point.chart, base_point.x));
  Eigen::VectorXd z(dm + dm * dm);
  z.head(dm) = base_point.x;
  for (int i = 0; i < dm; ++i)
    for (int a = 0; a < dm; ++a) z[dm + i * dm + a] = fr(i, a);
  return ChartPoint{base_point.chart, z};
}

PathSample map_path(const SmoothMap& F, const PathSample& src) {
  PathSample out(&F.target(), src.grid());
  out.set_start(F.value(src.point(0)));
  for (int k = 0; k < src.steps(); ++k) {
    const PathStep& s = src.step(k);
    const ChartPoint a = F.value(ChartPoint{s.chart, s.x0});
    PathStep t;
    t.chart = a.chart;
    t.x0 = a.x;
    t.x1 = F.target().to_chart(F.value(ChartPoint{s.chart, s.x1}), a.chart);
    out.mutable_steps().push_back(std::move(t));
  }
  return out;
}

PathSample project_path(const Scenario& sc, const PathSample& total_path) {
  PathSample base(sc.base.get(), total_path.grid());
  const SmoothMap& pi = sc.bundle->projection();
  base.set_start(pi.value(total_path.point(0)));
  for (int k = 0; k < total_path.steps(); ++k) {
    const PathStep& s = total_path.step(k);
    const ChartPoint down0 = pi.value(ChartPoint{s.chart, s.x0});
    PathStep b;
    b.chart = down0.chart;
    b.x0 = down0.x;
    b.x1 = sc.base->to_chart(pi.value(ChartPoint{s.chart, s.x1}), down0.chart);
    base.mutable_steps().push_back(std::move(b));
  }
  return base;
}

namespace {

PathEnsemble run_parallel(const ChartedManifold& M, const TimeGrid& grid, int paths, std::uint64_t seed,
                          int threads, const std::function<PathSample(int, RngStream&)>& make_path) {
  PathEnsemble ens(&M, grid, seed);
  ens.mutable_paths().resize(static_cast<std::size_t>(paths));
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, paths));
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (;;) {
          const int i = next.fetch_add(1);
          if (i >= paths) break;
          RngStream rng(seed, static_cast<std::uint64_t>(i));
          ens.mutable_paths()[static_cast<std::size_t>(i)] = make_path(i, rng);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return ens;
}

}  // namespace

PathEnsemble simulate_ensemble(const ChartedManifold& M, const std::vector<Driver>& drivers,
                               const std::function<ChartPoint(int)>& start_of_path, const TimeGrid& grid,
                               int paths, std::uint64_t seed, int threads) {
  return run_parallel(M, grid, paths, seed, threads, [&](int i, RngStream& rng) {
    return simulate_heun(M, drivers, start_of_path(i), grid, rng);
  });
}

PathEnsemble brownian_ensemble(const ChartedManifold& M, const MatrixFieldOnCharts& g,
                               const AffineConnection& levi_civita,
                               const std::function<ChartPoint(int)>& start_of_path, const TimeGrid& grid,
                               int paths, std::uint64_t seed, int threads) {
  return run_parallel(M, grid, paths, seed, threads, [&](int i, RngStream& rng) {
    return brownian_chart(M, g, levi_civita, start_of_path(i), grid, rng);
  });
}

std::vector<Driver> make_drivers(const std::shared_ptr<Scenario>& sc, const std::vector<DriverSpec>& specs) {
  std::vector<Driver> out;
  const int dm = sc->base->dim();
  const int dg = sc->group->dim();
  for (const DriverSpec& spec : specs) {
    if (spec.name == "horizontal-brownian") {
      // lifts of a base orthonormal frame
      for (int a = 0; a < dm; ++a) {
        Driver d;
        d.kind = Driver::Kind::Brownian;
        d.label = "h-brownian-" + std::to_string(a);
        d.field = [sc, a](const ChartPoint& p) -> Eigen::VectorXd {
          const ChartPoint down = sc->bundle->projection().value(p);
          const Eigen::MatrixXd frame = orthonormal_frame(sc->base_metric->value(down.chart, down.x));
          return sc->form->horizontal_lift(p, frame.col(a));
        };
        out.push_back(std::move(d));
      }
    } else if (spec.name == "vertical-brownian") {
      for (int a = 0; a < dg; ++a) {
        Driver d;
        d.kind = Driver::Kind::Brownian;
        d.label = "v-brownian-" + std::to_string(a);
        d.field = [sc, a, dg](const ChartPoint& p) -> Eigen::VectorXd {
          return sc->bundle->fundamental(p, Eigen::VectorXd::Unit(dg, a));
        };
        out.push_back(std::move(d));
      }
    } else if (spec.name == "horizontal-drift") {
      Driver d;
      d.kind = Driver::Kind::Drift;
      d.label = "h-drift";
      Eigen::VectorXd coeff = spec.coefficients;
      if (coeff.size() != dm) throw ConfigError("horizontal-drift needs " + std::to_string(dm) + " coefficients");
      d.field = [sc, coeff](const ChartPoint& p) -> Eigen::VectorXd {
        const ChartPoint down = sc->bundle->projection().value(p);
        const Eigen::MatrixXd frame = orthonormal_frame(sc->base_metric->value(down.chart, down.x));
        return sc->form->horizontal_lift(p, frame * coeff);
      };
      out.push_back(std::move(d));
    } else if (spec.name == "vertical-drift") {
      Driver d;
      d.kind = Driver::Kind::Drift;
      d.label = "v-drift";
      Eigen::VectorXd coeff = spec.coefficients;
      if (coeff.size() != dg) throw ConfigError("vertical-drift needs " + std::to_string(dg) + " coefficients");
      d.field = [sc, coeff](const ChartPoint& p) -> Eigen::VectorXd {
        return sc->bundle->fundamental(p, coeff);
      };
      out.push_back(std::move(d));
    } else {
      throw ConfigError("unknown driver spec '" + spec.name + "'");
    }
  }
  return out;
}

DriverSpec parse_driver_spec(const std::string& text, const Scenario& sc) {
  DriverSpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  std::vector<double> vals;
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t used = 0;
      vals.push_back(std::stod(rest.substr(pos), &used));
      pos += used;
      if (pos < rest.size() && rest[pos] == ',') ++pos;
    }
  }
  int expected = 0;
  if (spec.name == "horizontal-drift") expected = sc.base->dim();
  if (spec.name == "vertical-drift") expected = sc.group->dim();
  if (expected > 0 && vals.empty()) vals.assign(static_cast<std::size_t>(expected), 0.0);
  spec.coefficients = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  return spec;
}

}  // namespace fiberlab
