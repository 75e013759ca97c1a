#pragma once

#include <map>
#include <shared_mutex>
#include <span>
#include <vector>

#include "coarsegeo/space.hpp"

namespace coarsegeo {

// R^dim under an l_p norm, centered at a configurable base point.
// Enumeration materializes the scaled integer lattice inside the requested
// ball; samplers may intern arbitrary continuum points on top of that.
// Only p in (1, inf) gives unique geodesics from x0 (Busemann-valid).
class NormedSpace final : public MetricSpace {
public:
  // p = infinity is encoded as p <= 0.
  NormedSpace(int dim, double p, double lattice_step,
              std::vector<double> basepoint);

  std::string kind() const override { return "normed"; }
  std::string name() const override;
  double distance(PointId x, PointId y) const override;
  std::vector<PointId> ball(double radius) const override;
  double enumeration_limit() const override;
  std::string label(PointId p) const override;
  bool point_less(PointId a, PointId b) const override;
  std::size_t point_count() const override;

  int dim() const { return dim_; }
  double p() const { return p_; }
  bool l_infinity() const { return p_ <= 0.0; }
  bool busemann_valid() const { return !l_infinity() && p_ > 1.0; }

  std::span<const double> coords(PointId pt) const;

  // Coordinates relative to the base point (what the norm acts on).
  std::vector<double> offset(PointId pt) const;

  double norm(std::span<const double> v) const;
  double euclidean_norm(std::span<const double> v) const;

  // Register an arbitrary point given by absolute coordinates. Returns the
  // existing id when the exact point is already materialized.
  PointId intern(const std::vector<double>& coords) const;

private:
  void lattice_upto_locked(double radius) const;
  PointId intern_locked(const std::vector<double>& coords) const;

  int dim_;
  double p_;
  double step_;
  std::vector<double> base_;

  mutable std::shared_mutex mu_;
  mutable std::vector<double> flat_;  // dim_-strided coordinates
  mutable std::map<std::vector<double>, PointId> index_;
  mutable double lattice_enumerated_ = -1.0;
};

}  // namespace coarsegeo
