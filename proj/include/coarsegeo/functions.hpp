#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coarsegeo/axioms.hpp"
#include "coarsegeo/products.hpp"

namespace coarsegeo {

// Bounded scalar function over a space's points. Built-ins cover model
// coordinates, radial and angular profiles; arbitrary tables come from
// config. Complex values enter only through moduli of differences.
struct SampledFunction {
  std::string name;
  nlohmann::ordered_json params;
  std::function<std::complex<double>(PointId)> eval;
  double bound = 1.0;  // |f| <= bound is validated on every sample
};

// Built-ins: "ball-coordinate" {axis}, "square-coordinate" {axis},
// "radial", "angular" {axis}, "constant" {value}. Coordinate functions
// need a normed space.
SampledFunction make_builtin_function(const std::string& name,
                                      const nlohmann::json& params,
                                      const SpacePtr& space);

// {"label": value or [re, im], ...}; defined on the labels of any space.
SampledFunction make_table_function(const nlohmann::json& table,
                                    const SpacePtr& space, double bound);

// Gromov profile V_g(Q) = max{|f(x)-f(y)| : (x|y) >= Q} and Higson profile
// V_h(R,B) = max{|f(x)-f(y)| : d(x,y) <= R, x,y outside B(x0,B)}, both over
// distinct sampled pairs. An entry with no qualifying pair is reported
// unattained: it carries no evidence and cannot certify smallness.
struct ProfileEntry {
  double value = 0.0;
  bool attained = false;
  std::string witness;
};

struct VariationProfile {
  std::vector<double> q_ladder;
  std::vector<ProfileEntry> gromov;  // per Q
  std::vector<double> r_ladder;
  std::vector<double> b_ladder;
  std::vector<std::vector<ProfileEntry>> higson;  // [R index][B index]
  nlohmann::ordered_json to_json() const;
};

VariationProfile variation_profiles(const SampledFunction& f,
                                    const ProductOracle& product,
                                    const std::vector<PointId>& sample,
                                    const std::vector<double>& q_ladder,
                                    const std::vector<double>& r_ladder,
                                    const std::vector<double>& b_ladder);

// Finite instance of "every Gromov function is a Higson function": for each
// epsilon, the least attained ladder Q with V_g(Q) < epsilon, then for each
// R the check V_h(R, rho3(Q,R)) < epsilon on the same sample.
struct GromovHigsonEntry {
  double epsilon = 0.0;
  std::optional<double> q;  // empty: not Gromov at this epsilon on-sample
  struct PerR {
    double R = 0.0;
    double bound_B = 0.0;  // rho3(Q, R)
    double higson_value = 0.0;
    bool attained = false;
    bool pass = false;
  };
  std::vector<PerR> rows;
};

struct GromovHigsonReport {
  std::vector<GromovHigsonEntry> entries;
  bool all_pass = true;  // every Gromov-passing epsilon passed every R
  nlohmann::ordered_json to_json() const;
};

GromovHigsonReport gromov_implies_higson_check(
    const SampledFunction& f, const ProductOracle& product,
    const MonotoneEnvelope2D& rho3, const std::vector<double>& eps_ladder,
    const std::vector<double>& r_ladder, const std::vector<double>& q_ladder,
    const std::vector<PointId>& sample);

}  // namespace coarsegeo
