#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarsegeo/space.hpp"

namespace coarsegeo {

enum class SampleStrategy { kFullBall, kAnnulusShells, kSeededRandom };

std::string to_string(SampleStrategy s);
SampleStrategy sample_strategy_from_string(const std::string& s);

// Deterministic sampling recipe: identical spec on an identical space
// yields the identical point list.
struct SampleSpec {
  SampleStrategy strategy = SampleStrategy::kFullBall;
  double r_in = 0.0;
  double r_out = 50.0;
  // annulus-shells: points per shell; seeded-random: total point budget.
  int per_shell = 64;
  // annulus-shells: spacing between shell radii. 0 picks (r_out-r_in)/8.
  double shell_step = 0.0;
  std::uint64_t seed = 0;
};

// Points p with r_in - tol <= d(x0,p) <= r_out + tol, deterministic under a
// fixed spec, canonically sorted and deduplicated. full-ball returns every
// enumerable point in the band. On normed spaces annulus-shells places
// per_shell equally spaced directions on each shell (dimension 2; other
// dimensions draw seeded directions) and seeded-random draws radius and
// direction from the seed; on enumerable spaces both thin the band
// deterministically.
std::vector<PointId> annulus_sample(const MetricSpace& space, double r_in,
                                    double r_out, const SampleSpec& spec);

// Same with the bounds taken from the spec itself.
std::vector<PointId> sample(const MetricSpace& space, const SampleSpec& spec);

}  // namespace coarsegeo
