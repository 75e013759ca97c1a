#include "coarsegeo/fixtures.hpp"

#include <algorithm>
#include <mutex>
#include <cmath>
#include <cstdlib>

namespace coarsegeo {

GridLikeSpace::GridLikeSpace() {
  pts_.push_back({0, 0});
  index_[{0, 0}] = 0;
}

PointId GridLikeSpace::intern_locked(long long m, long long n) const {
  auto key = std::make_pair(m, n);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  PointId id = static_cast<PointId>(pts_.size());
  pts_.push_back(key);
  index_.emplace(key, id);
  return id;
}

double GridLikeSpace::distance(PointId x, PointId y) const {
  std::shared_lock lk(mu_);
  if (x >= pts_.size() || y >= pts_.size()) {
    throw DomainError("point not in space");
  }
  auto [m1, n1] = pts_[x];
  auto [m2, n2] = pts_[y];
  if (m1 == m2) return static_cast<double>(std::llabs(n1 - n2));
  return static_cast<double>(n1 + n2);
}

std::vector<PointId> GridLikeSpace::ball(double radius) const {
  if (radius > enumeration_limit()) {
    throw DomainError("radius exceeds enumeration capability");
  }
  std::unique_lock lk(mu_);
  if (radius > enumerated_) {
    enumerate_upto(radius + kRadiusTol);
    enumerated_ = radius;
  }
  std::vector<PointId> out;
  for (const auto& [key, id] : index_) {
    // d(x0, (m,n)) = n
    if (static_cast<double>(key.second) <= radius + kRadiusTol) {
      out.push_back(id);
    }
  }
  // index_ iterates in (m, n) order already, which is the canonical order.
  return out;
}

std::string GridLikeSpace::label(PointId p) const {
  auto [m, n] = coords(p);
  return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

bool GridLikeSpace::point_less(PointId a, PointId b) const {
  return coords(a) < coords(b);
}

std::size_t GridLikeSpace::point_count() const {
  std::shared_lock lk(mu_);
  return pts_.size();
}

std::pair<long long, long long> GridLikeSpace::coords(PointId p) const {
  std::shared_lock lk(mu_);
  if (p >= pts_.size()) throw DomainError("point not in space");
  return pts_[p];
}

GridFixture::GridFixture(long long columns, std::string name)
    : columns_(columns), name_(std::move(name)) {
  if (columns_ < 1) throw SpecError(name_ + ": needs at least one column");
}

void GridFixture::enumerate_upto(double radius) const {
  long long nmax = static_cast<long long>(std::floor(radius));
  for (long long m = 1; m <= columns_; ++m) {
    for (long long n = 1; n <= nmax; ++n) intern_locked(m, n);
  }
}

void PaperYSpace::enumerate_upto(double radius) const {
  for (long long m = 1, v = 2; static_cast<double>(v) <= radius;
       ++m, v <<= 1) {
    intern_locked(m, v);
    if (v > (1LL << 60)) break;
  }
}

void PaperZSpace::enumerate_upto(double radius) const {
  for (long long m = 1, base = 2; static_cast<double>(base) <= radius;
       ++m, base <<= 1) {
    long long kmax = static_cast<long long>(std::floor(radius)) / base;
    for (long long k = 1; k <= kmax; ++k) intern_locked(m, base * k);
    if (base > (1LL << 60)) break;
  }
}

namespace {

bool is_power_of_two_at(long long n, long long m) {
  if (m < 1 || n < 1) return false;
  if (m >= 62) return false;
  return n == (1LL << m);
}

const GridLikeSpace& as_grid(const MetricSpace& s) {
  const auto* g = dynamic_cast<const GridLikeSpace*>(&s);
  if (!g) throw DomainError("predicate defined on grid fixtures only");
  return *g;
}

}  // namespace

PointPredicate paper_y_predicate() {
  return [](const MetricSpace& s, PointId p) {
    auto [m, n] = as_grid(s).coords(p);
    if (m == 0 && n == 0) return true;  // x0
    return is_power_of_two_at(n, m);
  };
}

PointPredicate paper_z_predicate() {
  return [](const MetricSpace& s, PointId p) {
    auto [m, n] = as_grid(s).coords(p);
    if (m == 0 && n == 0) return true;
    if (m < 1 || m >= 62 || n < 1) return false;
    return n % (1LL << m) == 0;
  };
}

}  // namespace coarsegeo
