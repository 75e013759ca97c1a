#pragma once

#include <memory>
#include <vector>

#include "coarsegeo/graph_space.hpp"
#include "coarsegeo/products.hpp"

namespace coarsegeo {

// One integer-parametrized path per vertex, read off the deterministic
// shortest-path tree from x0 (lexicographically smallest parent). On
// unit-weight graphs the paths are exact (1,0)-geodesics; the remaining
// constants describe the coarse convexity data attached to the family.
struct QuasiGeodesicFamily {
  std::shared_ptr<const GraphSpace> space;
  std::vector<std::vector<PointId>> paths;  // paths[v][t], paths[v][0] == x0
  double lambda = 1.0;
  double k = 0.0;
  double E = 1.0;
  double C = 0.0;
  double theta_slope = 1.0;   // theta(u) = theta_slope * u + theta_offset
  double theta_offset = 0.0;

  double theta(double u) const { return theta_slope * u + theta_offset; }
  // Prop-5.4 hypothesis: admissible D >= max{C+1, lambda*theta(0)+k}.
  double admissible_D() const;
};

QuasiGeodesicFamily build_graph_family(std::shared_ptr<const GraphSpace> g);

// (x|y)^D = sup over family paths ending at x and y of the largest integer
// parameter t <= min path length with d(gamma(t), eta(t)) <= D. The family
// carries one path per point, so the outer sup is a single evaluation.
class FamilyProduct final : public ProductOracle {
public:
  FamilyProduct(QuasiGeodesicFamily family, double D);
  double value(PointId x, PointId y) const override;
  nlohmann::ordered_json descriptor() const override;
  const QuasiGeodesicFamily& family() const { return family_; }
  double D() const { return d_; }

private:
  QuasiGeodesicFamily family_;
  double d_;
};

}  // namespace coarsegeo
