#pragma once

#include <json.hpp>

#include "fiberlab/bundle/frame_bundle.hpp"
#include "fiberlab/bundle/kaluza_klein.hpp"

namespace fiberlab {

/// One fully assembled bundle-with-connection setup: manifolds, group,
/// projection/action/sigma, connection form, the projectable connection under
/// test and the known base projection, plus sampling helpers.
struct Scenario {
  std::string id;
  std::string summary;
  nlohmann::json params;

  std::shared_ptr<ChartedManifold> total;
  std::shared_ptr<ChartedManifold> base;
  std::shared_ptr<const LieGroup> group;
  std::shared_ptr<PrincipalBundle> bundle;
  std::shared_ptr<ConnectionForm> form;
  std::shared_ptr<AffineConnection> nablaP;
  std::shared_ptr<AffineConnection> nablaM;
  std::shared_ptr<FundamentalTensors> tensors;

  std::shared_ptr<const MatrixFieldOnCharts> base_metric;
  std::shared_ptr<const MatrixFieldOnCharts> total_metric;  // null unless metric scenario
  Eigen::MatrixXd k0;
  bool kaluza_klein = false;

  /// Named alternates (frame bundles: "horizontal", "canonical").
  std::map<std::string, std::shared_ptr<AffineConnection>> connections;

  std::function<ChartPoint(RngStream&)> sample_total;
  /// A point over the given base point, with pi(section(b)) == b.
  std::function<ChartPoint(const ChartPoint&)> section;
  /// Canonical start point for simulations.
  ChartPoint default_start;

  std::shared_ptr<FundamentalTensors> tensors_for(const std::string& name) const {
    auto it = connections.find(name);
    if (it == connections.end()) throw ConfigError(id + ": unknown connection '" + name + "'");
    return std::make_shared<FundamentalTensors>(bundle, form, it->second);
  }
};

struct CatalogEntry {
  std::string id;
  std::string summary;
  std::string parameters;
};

/// The four public scenarios.
std::vector<CatalogEntry> scenario_catalog();

/// Build by id with parameter overrides (unknown ids/keys are errors).
std::shared_ptr<Scenario> build_scenario(const std::string& id, const nlohmann::json& params);

/// Validation fixture outside the catalog: trivial SU(2) bundle over a line
/// with bi-invariant fiber metric; the one setup where the fiber-algebra
/// bracket term of the invariant-metric table is nonzero.
std::shared_ptr<Scenario> make_su2_fiber_fixture();

}  // namespace fiberlab
