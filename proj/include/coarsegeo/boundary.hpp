#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "coarsegeo/products.hpp"
#include "coarsegeo/sampling.hpp"

namespace coarsegeo {

// Entourage relation V_n: (x|y) > n or d(x,y) < 1/n. Thresholds are real
// valued with n >= 1.
bool vn_related(const ProductOracle& product, double n, PointId x, PointId y);

// One equivalence class of the transitive closure of V_n on an annulus
// sample. Members are canonically sorted; the representative is the least.
struct ShadowCell {
  PointId representative;
  std::vector<PointId> members;
  double band_lo = 0.0, band_hi = 0.0;
  double n = 0.0;
};

std::vector<ShadowCell> shadow_cells(const ProductOracle& product, double r_in,
                                     double r_out, double n,
                                     const SampleSpec& spec);
std::vector<ShadowCell> shadow_cells_on(const ProductOracle& product,
                                        const std::vector<PointId>& sample,
                                        double r_in, double r_out, double n);

// Finite-scale shadow of the boundary: cells per (radius band, n), links
// between consecutive bands (some x in C, y in C' with (x|y) > n), and per
// n the number of link-components that touch every band.
struct BoundaryProfile {
  struct Band {
    double lo = 0.0, hi = 0.0;
  };
  struct Link {
    std::size_t band;  // cell lives in bands[band], links to band+1
    std::size_t from_cell, to_cell;
  };
  struct Level {
    double n = 0.0;
    std::vector<std::vector<ShadowCell>> cells;  // per band
    std::vector<Link> links;
    std::size_t persistent_chains = 0;
  };
  std::vector<Band> bands;
  std::vector<Level> levels;
  nlohmann::ordered_json to_json(const MetricSpace& space) const;
  std::string to_dot(const MetricSpace& space) const;
};

// Bands are one ladder step wide: [R_i, R_{i+1}) plus a final band of the
// previous width starting at the last ladder entry.
BoundaryProfile refinement_profile(const ProductOracle& product,
                                   const std::vector<double>& radius_ladder,
                                   const std::vector<double>& n_ladder,
                                   const SampleSpec& spec);

// Finite-horizon evidence for membership in S_infty and for equivalence of
// two sequences. tail_min(h) = min over h <= i, j <= horizon of (a_i|a_j);
// the verdict at a threshold holds when some tail start h <= horizon pushes
// the tail minimum strictly above it.
struct SequenceVerdict {
  double threshold = 0.0;
  bool holds = false;
  int witness_tail = -1;
};

struct SequenceClassReport {
  std::vector<SequenceVerdict> a_in_s_infty;
  std::vector<SequenceVerdict> b_in_s_infty;
  std::vector<SequenceVerdict> equivalent;
  nlohmann::ordered_json to_json() const;
};

SequenceClassReport sequence_class_check(const ProductOracle& product,
                                         const std::vector<PointId>& seq_a,
                                         const std::vector<PointId>& seq_b,
                                         std::size_t horizon,
                                         const std::vector<double>& thresholds);

}  // namespace coarsegeo
