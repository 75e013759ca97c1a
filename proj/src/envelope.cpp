#include "coarsegeo/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coarsegeo {

namespace {

void validate(double key, double value) {
  if (key < 0.0 || value < 0.0 || !std::isfinite(key) ||
      !std::isfinite(value)) {
    throw DomainError("envelope constraints must be finite and >= 0");
  }
}

std::vector<Constraint1D> canonical_1d(std::vector<Constraint1D> cs) {
  for (const auto& c : cs) validate(c.key, c.value);
  std::sort(cs.begin(), cs.end(), [](const Constraint1D& a,
                                     const Constraint1D& b) {
    return a.key < b.key || (a.key == b.key && a.value < b.value);
  });
  std::vector<Constraint1D> steps;
  double running = 0.0;
  for (const auto& c : cs) {
    if (c.value <= running && !steps.empty()) continue;
    if (c.value == 0.0) continue;  // the empty envelope already gives 0
    if (!steps.empty() && steps.back().key == c.key) {
      steps.back().value = c.value;
    } else {
      steps.push_back(c);
    }
    running = c.value;
  }
  return steps;
}

}  // namespace

MonotoneEnvelope1D MonotoneEnvelope1D::from_constraints(
    std::vector<Constraint1D> cs) {
  MonotoneEnvelope1D e;
  e.steps_ = canonical_1d(std::move(cs));
  return e;
}

double MonotoneEnvelope1D::eval(double t) const {
  // Max value over keys <= t: the last step at or before t.
  auto it = std::upper_bound(
      steps_.begin(), steps_.end(), t,
      [](double v, const Constraint1D& c) { return v < c.key; });
  if (it == steps_.begin()) return 0.0;
  return std::prev(it)->value;
}

MonotoneEnvelope1D MonotoneEnvelope1D::with_keys_shifted(double shift) const {
  if (shift < 0.0) throw DomainError("rebase shift must be >= 0");
  std::vector<Constraint1D> cs;
  cs.reserve(steps_.size());
  for (const auto& c : steps_) {
    cs.push_back({std::max(0.0, c.key - shift), c.value});
  }
  return from_constraints(std::move(cs));
}

MonotoneEnvelope1D MonotoneEnvelope1D::with_values_shifted(
    double shift) const {
  if (shift < 0.0) throw DomainError("rebase shift must be >= 0");
  std::vector<Constraint1D> cs;
  cs.reserve(steps_.size() + 1);
  for (const auto& c : steps_) cs.push_back({c.key, c.value + shift});
  if (shift > 0.0) cs.push_back({0.0, shift});  // lift the zero tail too
  return from_constraints(std::move(cs));
}

void Envelope1DBuilder::add(double key, double value) {
  validate(key, value);
  buf_.push_back({key, value});
  if (buf_.size() >= kFlushAt) compact();
}

void Envelope1DBuilder::compact() {
  buf_ = canonical_1d(std::move(buf_));
}

void Envelope1DBuilder::merge(Envelope1DBuilder&& other) {
  buf_.insert(buf_.end(), other.buf_.begin(), other.buf_.end());
  other.buf_.clear();
  if (buf_.size() >= kFlushAt) compact();
}

MonotoneEnvelope1D Envelope1DBuilder::finish() {
  return MonotoneEnvelope1D::from_constraints(std::move(buf_));
}

namespace {

// Keep only Pareto-maximal constraints: drop any point that another point
// dominates with both keys <= and value >=. Sweep by s with a Fenwick
// prefix-max over compressed t.
std::vector<Constraint2D> canonical_2d(std::vector<Constraint2D> cs) {
  for (const auto& c : cs) {
    validate(c.s, c.value);
    validate(c.t, c.value);
  }
  if (cs.empty()) return cs;
  std::sort(cs.begin(), cs.end(), [](const Constraint2D& a,
                                     const Constraint2D& b) {
    if (a.s != b.s) return a.s < b.s;
    if (a.t != b.t) return a.t < b.t;
    return a.value > b.value;
  });
  std::vector<double> ts;
  ts.reserve(cs.size());
  for (const auto& c : cs) ts.push_back(c.t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  auto t_rank = [&](double t) {
    return static_cast<std::size_t>(
        std::lower_bound(ts.begin(), ts.end(), t) - ts.begin());
  };

  std::vector<double> fw(ts.size() + 1, -1.0);
  auto update = [&](std::size_t i, double v) {
    for (++i; i <= ts.size(); i += i & (~i + 1)) fw[i] = std::max(fw[i], v);
  };
  auto prefix_max = [&](std::size_t i) {
    double m = -1.0;
    for (++i; i > 0; i -= i & (~i + 1)) m = std::max(m, fw[i]);
    return m;
  };

  // Any dominator of a point sorts before it (smaller s, or equal s and
  // smaller t, or equal keys and larger value), so one sweep is complete.
  std::vector<Constraint2D> kept;
  for (const auto& c : cs) {
    if (c.value == 0.0) continue;
    std::size_t r = t_rank(c.t);
    if (prefix_max(r) >= c.value) continue;  // dominated
    kept.push_back(c);
    update(r, c.value);
  }
  return kept;
}

}  // namespace

MonotoneEnvelope2D MonotoneEnvelope2D::from_constraints(
    std::vector<Constraint2D> cs) {
  MonotoneEnvelope2D e;
  e.pts_ = canonical_2d(std::move(cs));
  return e;
}

double MonotoneEnvelope2D::eval(double s, double t) const {
  double best = 0.0;
  for (const auto& c : pts_) {
    if (c.s > s) break;  // sorted by s
    if (c.t <= t) best = std::max(best, c.value);
  }
  return best;
}

MonotoneEnvelope2D MonotoneEnvelope2D::with_values_shifted(
    double shift) const {
  if (shift < 0.0) throw DomainError("rebase shift must be >= 0");
  std::vector<Constraint2D> cs;
  cs.reserve(pts_.size() + 1);
  for (const auto& c : pts_) cs.push_back({c.s, c.t, c.value + shift});
  if (shift > 0.0) cs.push_back({0.0, 0.0, shift});
  return from_constraints(std::move(cs));
}

void Envelope2DBuilder::add(double s, double t, double value) {
  buf_.push_back({s, t, value});
  if (buf_.size() >= kFlushAt) compact();
}

void Envelope2DBuilder::compact() {
  buf_ = canonical_2d(std::move(buf_));
}

void Envelope2DBuilder::merge(Envelope2DBuilder&& other) {
  buf_.insert(buf_.end(), other.buf_.begin(), other.buf_.end());
  other.buf_.clear();
  if (buf_.size() >= kFlushAt) compact();
}

MonotoneEnvelope2D Envelope2DBuilder::finish() {
  return MonotoneEnvelope2D::from_constraints(std::move(buf_));
}

LowerEnvelope1D LowerEnvelope1D::from_constraints(
    std::vector<Constraint1D> cs) {
  for (const auto& c : cs) validate(c.key, c.value);
  std::sort(cs.begin(), cs.end(), [](const Constraint1D& a,
                                     const Constraint1D& b) {
    return a.key < b.key || (a.key == b.key && a.value < b.value);
  });
  LowerEnvelope1D e;
  // Suffix minima, keeping the first key attaining each new minimum.
  double running = std::numeric_limits<double>::infinity();
  std::vector<Constraint1D> rev;
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    if (it->value < running) {
      running = it->value;
      rev.push_back({it->key, running});
    }
  }
  e.steps_.assign(rev.rbegin(), rev.rend());
  return e;
}

double LowerEnvelope1D::eval(double t) const {
  // Min value over keys >= t.
  auto it = std::lower_bound(
      steps_.begin(), steps_.end(), t,
      [](const Constraint1D& c, double v) { return c.key < v; });
  if (it == steps_.end()) return std::numeric_limits<double>::infinity();
  return it->value;
}

}  // namespace coarsegeo
