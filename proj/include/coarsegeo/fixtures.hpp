#pragma once

#include <map>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "coarsegeo/space.hpp"

namespace coarsegeo {

// Family of spaces on {x0} u (subset of N x N) carrying the metric
//
//   d((m1,n1),(m2,n2)) = |n1 - n2|  if m1 = m2,
//                        n1 + n2    otherwise,
//
// with x0 = (0,0). Covers the grid fixture, its Y and Z subspaces, and the
// star (the star with k rays is the grid truncated to k columns).
class GridLikeSpace : public MetricSpace {
public:
  std::string kind() const override { return "fixture"; }
  double distance(PointId x, PointId y) const override;
  std::vector<PointId> ball(double radius) const override;
  double enumeration_limit() const override { return 1e15; }
  std::string label(PointId p) const override;
  bool point_less(PointId a, PointId b) const override;
  std::size_t point_count() const override;

  // (m, n) coordinates; the base point is (0, 0).
  std::pair<long long, long long> coords(PointId p) const;

protected:
  GridLikeSpace();

  // Append every fixture point (m, n) with n <= radius that is not yet
  // materialized. Called under lock.
  virtual void enumerate_upto(double radius) const = 0;

  PointId intern_locked(long long m, long long n) const;

  mutable std::shared_mutex mu_;
  mutable std::vector<std::pair<long long, long long>> pts_;
  mutable std::map<std::pair<long long, long long>, PointId> index_;
  mutable double enumerated_ = 0.0;
};

// {x0} u {(m, n) : 1 <= m <= columns, n >= 1}. Named "paper-grid" or,
// with columns = rays, "star".
class GridFixture final : public GridLikeSpace {
public:
  GridFixture(long long columns, std::string name);
  std::string name() const override { return name_; }
  long long columns() const { return columns_; }

protected:
  void enumerate_upto(double radius) const override;

private:
  long long columns_;
  std::string name_;
};

// {x0} u {(m, 2^m) : m >= 1}. Proper: the ball of radius R holds
// O(log R) points.
class PaperYSpace final : public GridLikeSpace {
public:
  PaperYSpace() = default;
  std::string name() const override { return "paper-Y"; }

protected:
  void enumerate_upto(double radius) const override;
};

// {x0} u {(m, 2^m n) : m, n >= 1}.
class PaperZSpace final : public GridLikeSpace {
public:
  PaperZSpace() = default;
  std::string name() const override { return "paper-Z"; }

protected:
  void enumerate_upto(double radius) const override;
};

// Membership predicates for restricting grid products per the Y and Z
// subspaces. Only defined on GridLikeSpace points.
PointPredicate paper_y_predicate();
PointPredicate paper_z_predicate();

}  // namespace coarsegeo
