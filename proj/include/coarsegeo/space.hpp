#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "coarsegeo/common.hpp"

namespace coarsegeo {

// Enumerable metric space behind a distance oracle. Concrete spaces
// materialize points lazily per requested radius; ids are stable once
// assigned and id 0 is the base point. All methods are safe to call from
// parallel workers after construction (caches are internally synchronized),
// and nothing mutates a space except lazy materialization.
class MetricSpace {
public:
  virtual ~MetricSpace() = default;

  virtual std::string kind() const = 0;  // "fixture" | "graph" | "normed"
  virtual std::string name() const = 0;

  PointId basepoint() const { return 0; }

  virtual double distance(PointId x, PointId y) const = 0;

  // All points p with d(x0, p) <= radius + kRadiusTol, in canonical order
  // (point_less). Includes the base point.
  virtual std::vector<PointId> ball(double radius) const = 0;

  // Largest radius this space can enumerate to.
  virtual double enumeration_limit() const = 0;

  virtual std::string label(PointId p) const = 0;

  // Canonical total order on points; ties cells and witnesses to a
  // deterministic representative.
  virtual bool point_less(PointId a, PointId b) const = 0;

  virtual std::size_t point_count() const = 0;

  double base_distance(PointId p) const { return distance(basepoint(), p); }
};

using SpacePtr = std::shared_ptr<const MetricSpace>;
using PointPredicate = std::function<bool(const MetricSpace&, PointId)>;

// Metric subspace sharing the parent's point ids and distance oracle.
// The base point must belong to the subset.
class SubspaceView final : public MetricSpace {
public:
  SubspaceView(SpacePtr parent, PointPredicate member, std::string name);

  std::string kind() const override { return parent_->kind(); }
  std::string name() const override { return name_; }
  double distance(PointId x, PointId y) const override {
    return parent_->distance(x, y);
  }
  std::vector<PointId> ball(double radius) const override;
  double enumeration_limit() const override {
    return parent_->enumeration_limit();
  }
  std::string label(PointId p) const override { return parent_->label(p); }
  bool point_less(PointId a, PointId b) const override {
    return parent_->point_less(a, b);
  }
  std::size_t point_count() const override { return parent_->point_count(); }

  bool contains(PointId p) const { return member_(*parent_, p); }
  const SpacePtr& parent() const { return parent_; }

private:
  SpacePtr parent_;
  PointPredicate member_;
  std::string name_;
};

}  // namespace coarsegeo
