#include "fiberlab/stochastic/path.hpp"

#include <cstring>
#include <istream>
#include <ostream>

namespace fiberlab {

namespace {

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void write_ensemble_csv(std::ostream& os, const PathEnsemble& ens) {
  const int dim = ens.manifold().dim();
  os << "path,step,chart";
  for (int d = 0; d < dim; ++d) os << ",x" << d;
  os << "\n";
  for (int i = 0; i < ens.size(); ++i) {
    const PathSample& p = ens.path(i);
    for (int k = 0; k <= p.steps(); ++k) {
      const ChartPoint pt = p.point(k);
      os << i << ',' << k << ',' << pt.chart;
      for (int d = 0; d < dim; ++d) os << ',' << pt.x[d];
      os << "\n";
    }
  }
}

void write_ensemble_binary(std::ostream& os, const PathEnsemble& ens) {
  const int dim = ens.manifold().dim();
  os.write("FLPE", 4);
  put<std::uint32_t>(os, 1);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(ens.size()));
  put<std::uint32_t>(os, ens.size() > 0 ? static_cast<std::uint32_t>(ens.path(0).steps()) : 0u);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(dim));
  put<double>(os, ens.grid().dt);
  for (int i = 0; i < ens.size(); ++i) {
    put<std::uint64_t>(os, static_cast<std::uint64_t>(i));
    const PathSample& p = ens.path(i);
    for (int k = 0; k <= p.steps(); ++k) {
      const ChartPoint pt = p.point(k);
      put<std::uint32_t>(os, static_cast<std::uint32_t>(pt.chart));
      for (int d = 0; d < dim; ++d) put<double>(os, pt.x[d]);
    }
  }
}

PathEnsemble read_ensemble_binary(std::istream& is, const ChartedManifold* manifold) {
  char magic[4];
  is.read(magic, 4);
  if (std::memcmp(magic, "FLPE", 4) != 0) throw ConfigError("bad ensemble file: magic mismatch");
  const auto version = get<std::uint32_t>(is);
  if (version != 1) throw ConfigError("bad ensemble file: unsupported version");
  const auto npaths = get<std::uint32_t>(is);
  const auto nsteps = get<std::uint32_t>(is);
  const auto dim = get<std::uint32_t>(is);
  const double dt = get<double>(is);
  if (manifold != nullptr && static_cast<int>(dim) != manifold->dim())
    throw ConfigError("bad ensemble file: dimension mismatch");
  TimeGrid grid;
  grid.dt = dt;
  grid.steps = static_cast<int>(nsteps);
  PathEnsemble ens(manifold, grid, 0);
  for (std::uint32_t i = 0; i < npaths; ++i) {
    (void)get<std::uint64_t>(is);
    PathSample path(manifold, grid);
    std::vector<ChartPoint> pts(nsteps + 1);
    for (std::uint32_t k = 0; k <= nsteps; ++k) {
      pts[k].chart = static_cast<int>(get<std::uint32_t>(is));
      pts[k].x.resize(dim);
      for (std::uint32_t d = 0; d < dim; ++d) pts[k].x[d] = get<double>(is);
    }
    path.set_start(pts[0]);
    for (std::uint32_t k = 0; k < nsteps; ++k) {
      PathStep s;
      s.chart = pts[k].chart;
      s.x0 = pts[k].x;
      // end point was stored in the *next* state's chart; steps store both
      // ends in one chart, so transition if needed
      if (manifold != nullptr && pts[k + 1].chart != s.chart)
        s.x1 = manifold->to_chart(pts[k + 1], s.chart);
      else
        s.x1 = pts[k + 1].x;
      path.mutable_steps().push_back(std::move(s));
    }
    ens.mutable_paths().push_back(std::move(path));
  }
  return ens;
}

}  // namespace fiberlab
