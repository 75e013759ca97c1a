#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coarsegeo/axioms.hpp"
#include "coarsegeo/products.hpp"

namespace coarsegeo {

// One probe key of the S_R table across the truncation ladder.
struct PreceqKeyDiag {
  double key = 0.0;
  std::vector<double> values;  // envelope value per truncation radius
  Divergence diagnosis = Divergence::kInconclusive;
};

// Verdict for P preceq P': the envelope key=(x|y)', value=(x|y) over all
// sampled pairs is the S_R table; the direction holds on the sample when
// that table stays bounded across the truncation ladder at every probe key.
struct DirectionReport {
  bool holds = false;
  std::vector<PreceqKeyDiag> keys;
  MonotoneEnvelope1D s_r_table;  // from the largest truncation
  std::string worst_pair;        // pair attaining the table's top value
  nlohmann::ordered_json to_json() const;
};

struct ComparisonConfig {
  std::vector<double> truncation_ladder = {50.0, 100.0, 200.0};
  std::vector<double> key_ladder = {1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  double growth_threshold = 1.0;
  double stabilize_tol = 1e-9;
};

DirectionReport preceq_check(const ProductOracle& p, const ProductOracle& q,
                             const SampleSpec& spec,
                             const ComparisonConfig& cfg = {});

struct ComparisonReport {
  DirectionReport forward;   // P preceq P'
  DirectionReport backward;  // P' preceq P
  bool equivalent = false;   // conjunction of both directions
  MonotoneEnvelope1D rho_plus;   // (x|y)' over keys (x|y)
  LowerEnvelope1D rho_minus;     // min (x|y)' over keys (x|y) >= t
  // rho_minus probed at the key ladder; asymptotics are reported as a
  // trend, never as a proven limit.
  std::vector<std::pair<double, double>> rho_minus_trend;
  nlohmann::ordered_json to_json() const;
};

ComparisonReport coarse_equivalence_check(const ProductOracle& p,
                                          const ProductOracle& q,
                                          const SampleSpec& spec,
                                          const ComparisonConfig& cfg = {});

enum class SandwichMode { kAdditive, kMultiplicative };

struct SandwichVerdict {
  bool pass = true;
  double worst_violation = 0.0;
  std::string worst_pair;
  nlohmann::ordered_json to_json() const;
};

// Additive: low(x,y) <= mid(x,y) <= low(x,y) + shift on every sampled
// pair. Multiplicative: mid(x,y) <= scale * low(x,y).
SandwichVerdict sandwich_check(const ProductOracle& low,
                               const ProductOracle& mid, SandwichMode mode,
                               double shift_or_scale,
                               const std::vector<PointId>& sample,
                               double tolerance = 0.0);

}  // namespace coarsegeo
