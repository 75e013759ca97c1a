#include "coarsegeo/normed_space.hpp"

#include <algorithm>
#include <mutex>
#include <cmath>
#include <cstdio>

namespace coarsegeo {

namespace {
// Lattice balls beyond this point count are out of desk scale.
constexpr std::size_t kMaxLatticePoints = 4'000'000;
}  // namespace

NormedSpace::NormedSpace(int dim, double p, double lattice_step,
                         std::vector<double> basepoint)
    : dim_(dim), p_(p), step_(lattice_step), base_(std::move(basepoint)) {
  if (dim_ < 1) throw SpecError("normed: dim must be >= 1");
  if (p_ > 0.0 && p_ < 1.0) throw SpecError("normed: p must be >= 1");
  if (step_ <= 0.0) throw SpecError("normed: step must be > 0");
  if (base_.empty()) base_.assign(dim_, 0.0);
  if (static_cast<int>(base_.size()) != dim_) {
    throw SpecError("normed: basepoint dimension mismatch");
  }
  intern(base_);  // id 0
}

std::string NormedSpace::name() const {
  if (l_infinity()) return "linf";
  if (p_ == 2.0) return "euclidean";
  if (p_ == 1.0) return "l1";
  return "lp";
}

double NormedSpace::norm(std::span<const double> v) const {
  if (l_infinity()) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  if (p_ == 2.0) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  if (p_ == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p_);
  return std::pow(s, 1.0 / p_);
}

double NormedSpace::euclidean_norm(std::span<const double> v) const {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::span<const double> NormedSpace::coords(PointId pt) const {
  std::shared_lock lk(mu_);
  std::size_t off = static_cast<std::size_t>(pt) * dim_;
  if (off + dim_ > flat_.size()) throw DomainError("point not in space");
  return {flat_.data() + off, static_cast<std::size_t>(dim_)};
}

std::vector<double> NormedSpace::offset(PointId pt) const {
  auto c = coords(pt);
  std::vector<double> v(c.begin(), c.end());
  for (int i = 0; i < dim_; ++i) v[i] -= base_[i];
  return v;
}

double NormedSpace::distance(PointId x, PointId y) const {
  double stack[8];
  std::vector<double> heap;
  double* d = dim_ <= 8 ? stack : (heap.resize(dim_), heap.data());
  {
    std::shared_lock lk(mu_);
    std::size_t ox = static_cast<std::size_t>(x) * dim_;
    std::size_t oy = static_cast<std::size_t>(y) * dim_;
    if (ox + dim_ > flat_.size() || oy + dim_ > flat_.size()) {
      throw DomainError("point not in space");
    }
    for (int i = 0; i < dim_; ++i) d[i] = flat_[ox + i] - flat_[oy + i];
  }
  return norm({d, static_cast<std::size_t>(dim_)});
}

PointId NormedSpace::intern(const std::vector<double>& coords) const {
  if (static_cast<int>(coords.size()) != dim_) {
    throw DomainError("coordinate dimension mismatch");
  }
  std::unique_lock lk(mu_);
  return intern_locked(coords);
}

PointId NormedSpace::intern_locked(const std::vector<double>& coords) const {
  auto it = index_.find(coords);
  if (it != index_.end()) return it->second;
  PointId id = static_cast<PointId>(flat_.size() / dim_);
  flat_.insert(flat_.end(), coords.begin(), coords.end());
  index_.emplace(coords, id);
  return id;
}

double NormedSpace::enumeration_limit() const {
  // Rough cap keeping the lattice ball under the point budget.
  double per_axis = std::pow(static_cast<double>(kMaxLatticePoints),
                             1.0 / dim_);
  return step_ * per_axis / 2.0;
}

void NormedSpace::lattice_upto_locked(double radius) const {
  long long half = static_cast<long long>(std::floor((radius + kRadiusTol) /
                                                     step_));
  double width = 2.0 * half + 1.0;
  if (std::pow(width, dim_) > static_cast<double>(kMaxLatticePoints) * 4) {
    throw DomainError("r_out exceeds enumeration capability");
  }
  std::vector<long long> idx(dim_, -half);
  std::vector<double> pt(dim_);
  while (true) {
    for (int i = 0; i < dim_; ++i) {
      pt[i] = base_[i] + static_cast<double>(idx[i]) * step_;
    }
    std::vector<double> off(pt);
    for (int i = 0; i < dim_; ++i) off[i] -= base_[i];
    if (norm(off) <= radius + kRadiusTol) intern_locked(pt);
    int axis = dim_ - 1;
    while (axis >= 0) {
      if (++idx[axis] <= half) break;
      idx[axis] = -half;
      --axis;
    }
    if (axis < 0) break;
  }
}

std::vector<PointId> NormedSpace::ball(double radius) const {
  if (radius > enumeration_limit()) {
    throw DomainError("r_out exceeds enumeration capability");
  }
  std::vector<std::pair<std::vector<double>, PointId>> in_ball;
  {
    std::unique_lock lk(mu_);
    if (radius > lattice_enumerated_) {
      lattice_upto_locked(radius);
      lattice_enumerated_ = radius;
    }
    std::vector<double> off(dim_);
    for (const auto& [c, id] : index_) {
      for (int i = 0; i < dim_; ++i) off[i] = c[i] - base_[i];
      if (norm(off) <= radius + kRadiusTol) in_ball.emplace_back(c, id);
    }
  }
  // index_ iterates coordinates lexicographically: canonical order.
  std::vector<PointId> out;
  out.reserve(in_ball.size());
  for (auto& [c, id] : in_ball) out.push_back(id);
  return out;
}

std::string NormedSpace::label(PointId p) const {
  auto c = coords(p);
  std::string s = "(";
  char buf[40];
  for (int i = 0; i < dim_; ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", c[i]);
    s += buf;
    if (i + 1 < dim_) s += ",";
  }
  return s + ")";
}

bool NormedSpace::point_less(PointId a, PointId b) const {
  std::shared_lock lk(mu_);
  std::size_t oa = static_cast<std::size_t>(a) * dim_;
  std::size_t ob = static_cast<std::size_t>(b) * dim_;
  return std::lexicographical_compare(
      flat_.begin() + oa, flat_.begin() + oa + dim_, flat_.begin() + ob,
      flat_.begin() + ob + dim_);
}

std::size_t NormedSpace::point_count() const {
  std::shared_lock lk(mu_);
  return flat_.size() / dim_;
}

}  // namespace coarsegeo
