#include "coarsegeo/family.hpp"

#include <algorithm>
#include <cmath>

namespace coarsegeo {

double QuasiGeodesicFamily::admissible_D() const {
  return std::max(C + 1.0, lambda * theta(0.0) + k);
}

QuasiGeodesicFamily build_graph_family(std::shared_ptr<const GraphSpace> g) {
  if (!g->connected()) {
    throw DomainError("graph family needs a connected graph");
  }
  QuasiGeodesicFamily fam;
  fam.space = g;
  auto parent = g->shortest_path_tree();
  fam.paths.resize(g->vertex_count());
  for (PointId v = 0; v < g->vertex_count(); ++v) {
    std::vector<PointId> rev;
    PointId cur = v;
    rev.push_back(cur);
    while (cur != 0) {
      cur = parent[cur];
      rev.push_back(cur);
    }
    fam.paths[v].assign(rev.rbegin(), rev.rend());
  }
  if (g->unit_weights()) {
    // Shortest-path-tree paths in a unit graph are exact geodesics in the
    // edge-count parametrization.
    fam.lambda = 1.0;
    fam.k = 0.0;
    fam.theta_slope = 1.0;
  } else {
    double minw = std::min(1.0, g->min_weight());
    fam.lambda = std::max(g->max_weight(), minw > 0 ? 1.0 / minw : 1.0);
    fam.k = 0.0;
    fam.theta_slope = minw > 0 ? 1.0 / minw : 1.0;
  }
  fam.E = 1.0;
  fam.C = 0.0;
  fam.theta_offset = 0.0;
  return fam;
}

FamilyProduct::FamilyProduct(QuasiGeodesicFamily family, double D)
    : ProductOracle(family.space), family_(std::move(family)), d_(D) {
  double need = family_.admissible_D();
  if (D < need) {
    throw DomainError("family product: D=" + std::to_string(D) +
                      " below admissibility threshold " +
                      std::to_string(need));
  }
}

double FamilyProduct::value(PointId x, PointId y) const {
  const auto& px = family_.paths.at(x);
  const auto& py = family_.paths.at(y);
  if (px.empty() || py.empty()) throw DomainError("point has no family path");
  std::size_t tmax = std::min(px.size(), py.size()) - 1;
  const MetricSpace& s = space();
  double best = 0.0;  // t = 0 always qualifies: both paths start at x0
  for (std::size_t t = tmax; t > 0; --t) {
    if (s.distance(px[t], py[t]) <= d_) {
      best = static_cast<double>(t);
      break;
    }
  }
  return best;
}

nlohmann::ordered_json FamilyProduct::descriptor() const {
  return {{"construction", "family"},
          {"params",
           {{"D", d_},
            {"lambda", family_.lambda},
            {"k", family_.k},
            {"E", family_.E},
            {"C", family_.C}}}};
}

}  // namespace coarsegeo
