#pragma once

#include <cstddef>
#include <vector>

#include "coarsegeo/common.hpp"

namespace coarsegeo {

struct Constraint1D {
  double key = 0.0;
  double value = 0.0;
};

// Minimal non-decreasing staircase dominating a set of (key, value)
// constraints: eval(t) = max{value : key <= t}, 0 when nothing applies.
// Canonical form keeps strictly increasing keys with strictly increasing
// values, so equal staircases compare equal regardless of insertion order.
class MonotoneEnvelope1D {
public:
  MonotoneEnvelope1D() = default;
  static MonotoneEnvelope1D from_constraints(std::vector<Constraint1D> cs);

  double eval(double t) const;
  const std::vector<Constraint1D>& breakpoints() const { return steps_; }
  bool empty() const { return steps_.empty(); }

  // rho'(t) = rho(shift + t): the base-change transform for rho2.
  MonotoneEnvelope1D with_keys_shifted(double shift) const;
  // rho'(t) = rho(t) + shift: the base-change transform for rho4.
  MonotoneEnvelope1D with_values_shifted(double shift) const;

  friend bool operator==(const MonotoneEnvelope1D&,
                         const MonotoneEnvelope1D&) = default;

private:
  std::vector<Constraint1D> steps_;
};

// Incremental builder that collapses to canonical form whenever the raw
// buffer grows, keeping memory flat on multi-million constraint scans.
class Envelope1DBuilder {
public:
  void add(double key, double value);
  void merge(Envelope1DBuilder&& other);
  MonotoneEnvelope1D finish();

private:
  void compact();
  std::vector<Constraint1D> buf_;
  static constexpr std::size_t kFlushAt = 1 << 17;
};

struct Constraint2D {
  double s = 0.0;
  double t = 0.0;
  double value = 0.0;
};

// Least function non-decreasing in each coordinate that dominates the
// constraints: eval(s,t) = max{value : s' <= s and t' <= t}. Storage keeps
// only Pareto-maximal constraints (no other constraint with keys <= and
// value >=).
class MonotoneEnvelope2D {
public:
  MonotoneEnvelope2D() = default;
  static MonotoneEnvelope2D from_constraints(std::vector<Constraint2D> cs);

  double eval(double s, double t) const;
  const std::vector<Constraint2D>& breakpoints() const { return pts_; }
  bool empty() const { return pts_.empty(); }

  // rho'(s,t) = rho(s,t) + shift: the base-change transform for rho3.
  MonotoneEnvelope2D with_values_shifted(double shift) const;

  friend bool operator==(const MonotoneEnvelope2D&,
                         const MonotoneEnvelope2D&) = default;

private:
  std::vector<Constraint2D> pts_;  // sorted by (s, t), Pareto-pruned
};

class Envelope2DBuilder {
public:
  void add(double s, double t, double value);
  void merge(Envelope2DBuilder&& other);
  MonotoneEnvelope2D finish();

private:
  void compact();
  std::vector<Constraint2D> buf_;
  static constexpr std::size_t kFlushAt = 1 << 17;
};

// Non-decreasing lower staircase: eval(t) = min{value : key >= t}. Used for
// the rho_minus witness of coarse equivalence; evaluation beyond the last
// key has no constraint and reports +infinity.
class LowerEnvelope1D {
public:
  LowerEnvelope1D() = default;
  static LowerEnvelope1D from_constraints(std::vector<Constraint1D> cs);

  double eval(double t) const;
  const std::vector<Constraint1D>& breakpoints() const { return steps_; }
  bool empty() const { return steps_.empty(); }

private:
  std::vector<Constraint1D> steps_;
};

}  // namespace coarsegeo
