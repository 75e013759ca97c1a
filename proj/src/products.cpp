#include "coarsegeo/products.hpp"

#include <algorithm>
#include <cmath>

namespace coarsegeo {

double GromovProduct::value(PointId x, PointId y) const {
  const MetricSpace& s = space();
  double v = 0.5 * (s.base_distance(x) + s.base_distance(y) -
                    s.distance(x, y));
  return std::max(0.0, v);
}

nlohmann::ordered_json GromovProduct::descriptor() const {
  return {{"construction", "gromov"}};
}

double TrivialProduct::value(PointId x, PointId y) const {
  const MetricSpace& s = space();
  return std::min(s.base_distance(x), s.base_distance(y));
}

nlohmann::ordered_json TrivialProduct::descriptor() const {
  return {{"construction", "trivial"}};
}

BusemannProduct::BusemannProduct(SpacePtr space, double D)
    : ProductOracle(std::move(space)), d_(D) {
  normed_ = dynamic_cast<const NormedSpace*>(space_.get());
  if (!normed_) {
    throw DomainError("busemann product requires a normed space");
  }
  if (!normed_->busemann_valid()) {
    throw DomainError(
        "busemann product requires a strictly convex norm (1 < p < inf)");
  }
  if (D <= 0.0) throw DomainError("busemann product requires D > 0");
}

double BusemannProduct::value(PointId x, PointId y) const {
  auto vx = normed_->offset(x);
  auto vy = normed_->offset(y);
  double nx = normed_->norm(vx), ny = normed_->norm(vy);
  if (nx == 0.0 || ny == 0.0) return 0.0;
  std::vector<double> du(vx.size());
  for (std::size_t i = 0; i < du.size(); ++i) {
    du[i] = vx[i] / nx - vy[i] / ny;
  }
  double sep = normed_->norm(du);
  double cap = std::min(nx, ny);
  if (sep == 0.0) return cap;  // same ray
  return std::min(cap, d_ / sep);
}

nlohmann::ordered_json BusemannProduct::descriptor() const {
  return {{"construction", "busemann"}, {"params", {{"D", d_}}}};
}

RestrictedProduct::RestrictedProduct(ProductPtr inner,
                                     std::shared_ptr<const SubspaceView> sub)
    : ProductOracle(sub), inner_(std::move(inner)) {
  if (inner_->space_ptr().get() != sub->parent().get()) {
    throw DomainError("restriction must cut the product's own space");
  }
}

double RestrictedProduct::value(PointId x, PointId y) const {
  return inner_->value(x, y);
}

nlohmann::ordered_json RestrictedProduct::descriptor() const {
  return {{"construction", "restriction"},
          {"params",
           {{"subset", space().name()}, {"inner", inner_->descriptor()}}}};
}

ProductPtr restrict_product(ProductPtr inner, PointPredicate member,
                            std::string subset_name) {
  auto view = std::make_shared<const SubspaceView>(
      inner->space_ptr(), std::move(member), std::move(subset_name));
  return std::make_shared<RestrictedProduct>(std::move(inner), view);
}

double gromov_product(const MetricSpace& space, PointId x, PointId y) {
  return std::max(0.0, 0.5 * (space.base_distance(x) +
                              space.base_distance(y) - space.distance(x, y)));
}

double trivial_product(const MetricSpace& space, PointId x, PointId y) {
  return std::min(space.base_distance(x), space.base_distance(y));
}

}  // namespace coarsegeo
