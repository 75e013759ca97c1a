#pragma once

#include <memory>
#include <string>

#include "json.hpp"

#include "coarsegeo/normed_space.hpp"
#include "coarsegeo/space.hpp"

namespace coarsegeo {

// Symmetric non-negative pairing (x|y) over a metric space. Oracles are
// immutable and evaluation is pure, so they are safely shareable across
// workers.
class ProductOracle {
public:
  explicit ProductOracle(SpacePtr space) : space_(std::move(space)) {}
  virtual ~ProductOracle() = default;

  const MetricSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }

  double operator()(PointId x, PointId y) const { return value(x, y); }
  virtual double value(PointId x, PointId y) const = 0;
  virtual nlohmann::ordered_json descriptor() const = 0;

protected:
  SpacePtr space_;
};

using ProductPtr = std::shared_ptr<const ProductOracle>;

// (x|y)_{x0} = (d(x0,x) + d(x0,y) - d(x,y)) / 2, clamped at 0 against
// rounding.
class GromovProduct final : public ProductOracle {
public:
  using ProductOracle::ProductOracle;
  double value(PointId x, PointId y) const override;
  nlohmann::ordered_json descriptor() const override;
};

// (x|y) = min{d(x0,x), d(x0,y)}.
class TrivialProduct final : public ProductOracle {
public:
  using ProductOracle::ProductOracle;
  double value(PointId x, PointId y) const override;
  nlohmann::ordered_json descriptor() const override;
};

// Geodesic product on a normed space: with gamma_x the segment from x0 to
// x, the largest t with d(gamma_x(t), gamma_y(t)) <= D. By homogeneity this
// is min{|x|, |y|, D/|u_x - u_y|} with u the unit directions (last term
// dropped for equal directions). Requires a strictly convex norm.
class BusemannProduct final : public ProductOracle {
public:
  BusemannProduct(SpacePtr space, double D);
  double value(PointId x, PointId y) const override;
  nlohmann::ordered_json descriptor() const override;
  double D() const { return d_; }

private:
  const NormedSpace* normed_;
  double d_;
};

// Restriction of a product to a metric subspace (Prop-style: same values,
// axiom checks run on the restricted metric). The subspace must contain x0.
class RestrictedProduct final : public ProductOracle {
public:
  RestrictedProduct(ProductPtr inner, std::shared_ptr<const SubspaceView> sub);
  double value(PointId x, PointId y) const override;
  nlohmann::ordered_json descriptor() const override;

private:
  ProductPtr inner_;
};

ProductPtr restrict_product(ProductPtr inner, PointPredicate member,
                            std::string subset_name);

double gromov_product(const MetricSpace& space, PointId x, PointId y);
double trivial_product(const MetricSpace& space, PointId x, PointId y);

}  // namespace coarsegeo
