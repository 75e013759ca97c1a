#include "coarsegeo/model.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace coarsegeo {

CompactModelEmbedding CompactModelEmbedding::ball(const NormedSpace& space) {
  // Image is the unit ball of the space norm; the model metric is
  // Euclidean, so the diameter is twice the largest Euclidean norm on the
  // unit sphere of the space norm.
  double stretch = 1.0;
  if (!space.l_infinity() && space.p() > 2.0) {
    stretch = std::pow(static_cast<double>(space.dim()),
                       0.5 - 1.0 / space.p());
  } else if (space.l_infinity()) {
    stretch = std::sqrt(static_cast<double>(space.dim()));
  }
  return CompactModelEmbedding("ball", 2.0 * stretch);
}

CompactModelEmbedding CompactModelEmbedding::square(const NormedSpace& space) {
  return CompactModelEmbedding(
      "square", 2.0 * std::sqrt(static_cast<double>(space.dim())));
}

std::vector<double> CompactModelEmbedding::embed(const NormedSpace& space,
                                                 PointId p) const {
  auto v = space.offset(p);
  if (name_ == "ball") {
    double n = space.norm(v);
    for (auto& c : v) c /= (1.0 + n);
    return v;
  }
  for (auto& c : v) c /= (1.0 + std::abs(c));
  return v;
}

double CompactModelEmbedding::model_distance(const NormedSpace& space,
                                             PointId x, PointId y) const {
  auto ex = embed(space, x);
  auto ey = embed(space, y);
  double s = 0.0;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    double d = ex[i] - ey[i];
    s += d * d;
  }
  return std::sqrt(s);
}

CompactificationProduct::CompactificationProduct(SpacePtr space,
                                                 CompactModelEmbedding model)
    : ProductOracle(std::move(space)), model_(std::move(model)) {
  normed_ = dynamic_cast<const NormedSpace*>(space_.get());
  if (!normed_) {
    throw DomainError("compactification product requires a normed space");
  }
  if (model_.diameter() <= 0.0) {
    throw DomainError("compact model must have positive diameter");
  }
}

const CompactificationProduct::Cached& CompactificationProduct::cached(
    PointId p) const {
  {
    std::shared_lock lk(mu_);
    auto it = memo_.find(p);
    if (it != memo_.end()) return it->second;
  }
  Cached c;
  c.image = model_.embed(*normed_, p);
  c.d0 = normed_->base_distance(p);
  std::unique_lock lk(mu_);
  return memo_.emplace(p, std::move(c)).first->second;
}

long long CompactificationProduct::dyadic_level(PointId x, PointId y) const {
  const auto& cx = cached(x);
  const auto& cy = cached(y);
  double acc = 0.0;
  for (std::size_t i = 0; i < cx.image.size(); ++i) {
    double d = cx.image[i] - cy.image[i];
    acc += d * d;
  }
  double dc = std::sqrt(acc);
  if (dc == 0.0) return -1;  // coincident images: +infinity
  double diam = model_.diameter();
  if (dc > diam + kRadiusTol) {
    throw DomainError("model inconsistent: image distance exceeds diameter");
  }
  // Largest n with dc <= 2^-n diam, by exact halving; a tie at the next
  // level resolves to the larger n per the <=.
  long long n = 0;
  double thr = diam;
  while (n < 4096 && dc <= thr / 2.0) {
    thr /= 2.0;
    ++n;
  }
  return n;
}

double CompactificationProduct::value(PointId x, PointId y) const {
  double dx = cached(x).d0, dy = cached(y).d0;
  long long n = dyadic_level(x, y);
  if (n < 0) return std::min(dx, dy);
  return std::min({dx, dy, static_cast<double>(n)});
}

nlohmann::ordered_json CompactificationProduct::descriptor() const {
  return {{"construction", "compactification"},
          {"params",
           {{"model", model_.name()}, {"diam", model_.diameter()}}}};
}

}  // namespace coarsegeo
