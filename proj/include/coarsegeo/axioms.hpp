#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coarsegeo/envelope.hpp"
#include "coarsegeo/products.hpp"
#include "coarsegeo/sampling.hpp"
#include "coarsegeo/scan.hpp"

namespace coarsegeo {

// What a scan actually saw; every axiom verdict is an on-sample statement
// and carries this census so claims stay falsifiable.
struct SampleCensus {
  std::size_t points = 0;
  double min_radius = 0.0;
  double max_radius = 0.0;
  std::size_t pairs_scanned = 0;
  std::size_t triples_scanned = 0;
  bool triples_subsampled = false;
  std::uint64_t seed = 0;
  nlohmann::ordered_json to_json() const;
};

// Minimal monotone witnesses for CP1-CP3 extracted from one sample:
//   rho1: key (x|z), value min{(x|y),(y|z)} over scanned triples (plus the
//         degenerate instances with repeated points, read off pairs);
//   rho2: key d(x0,x), value (x|y) over ordered pairs (diagonal included);
//   rho3: key ((x|y), d(x,y)), value d(x0,x) over the same pairs.
struct CpEnvelopes {
  MonotoneEnvelope1D rho1;
  MonotoneEnvelope1D rho2;
  MonotoneEnvelope2D rho3;
  SampleCensus census;
};

CpEnvelopes extract_cp_envelopes(const ProductOracle& product,
                                 const std::vector<PointId>& sample,
                                 const ScanBudget& budget = {});

struct DeltaResult {
  double delta = 0.0;
  // Unfloored max of min{(x|y),(y|z)} - (x|z); the witness attains it.
  double max_defect = 0.0;
  // (x, y, z) attaining max_defect (empty when no nondegenerate triple
  // exists).
  std::vector<PointId> witness;
  SampleCensus census;
};

// Least delta valid on the sample for the Gromov product:
// max over distinct ordered triples of min{(x|y),(y|z)} - (x|z), floored
// at 0. Tight: the witness attains it.
DeltaResult hyperbolicity_delta(const MetricSpace& space,
                                const std::vector<PointId>& sample,
                                const ScanBudget& budget = {});

// Same scan against an arbitrary product oracle.
DeltaResult product_delta(const ProductOracle& product,
                          const std::vector<PointId>& sample,
                          const ScanBudget& budget = {});

struct Cp4Entry {
  double R = 0.0;
  std::optional<double> S;       // least witness radius, when one exists
  std::string offender;          // far point lacking a witness otherwise
  double offender_radius = 0.0;
};

struct Cp4Report {
  std::vector<Cp4Entry> table;
  bool satisfied = false;  // every ladder R found S(R) <= cap
  double cap = 0.0;
  SampleCensus census;
  nlohmann::ordered_json to_json() const;
};

// Finite-horizon CP4 scan. Witnesses are searched inside radius `cap`
// while the sampled far points run out to the sample horizon (which should
// exceed cap on unbounded fixtures): S(R) is the least sampled radius
// S <= cap such that every sampled x with d(x0,x) > S has a sampled
// witness y with d(x0,y) <= S and (x|y) >= R. Verdict
// "no-witness-within-cap" lists an offending (R, x) otherwise.
Cp4Report check_cp4(const ProductOracle& product,
                    const std::vector<double>& R_ladder, double cap,
                    const std::vector<PointId>& sample);

// Registered closed-form bound with its constants bound. 1D candidates
// compare against rho1/rho2-style envelopes, 2D against rho3-style.
struct BoundCandidate {
  std::string name;
  nlohmann::ordered_json params;
  std::function<double(double)> f1;
  std::function<double(double, double)> f2;
  bool two_dim = false;
};

// Known names: "identity", "affine" {a,b}, "double" (2t),
// "cp1-coarse-convex" {E,D} (5 E^2 D t), "cp2-quasi-geodesic" {lambda,k},
// "gromov-cp3" (2s+t), "busemann-cp3" {D} (s + (2/D) s t + t),
// "cp3-coarse-convex" {lambda,k,E,theta_slope,theta_offset}.
BoundCandidate make_bound_candidate(const std::string& name,
                                    const nlohmann::json& params);

struct BoundVerdict {
  bool pass = true;
  double worst_violation = 0.0;  // max breakpoint value - candidate
  double at_key_s = 0.0;
  double at_key_t = 0.0;  // unused for 1D envelopes
  nlohmann::ordered_json to_json() const;
};

BoundVerdict bound_check(const MonotoneEnvelope1D& env,
                         const BoundCandidate& candidate, double tolerance);
BoundVerdict bound_check(const MonotoneEnvelope2D& env,
                         const BoundCandidate& candidate, double tolerance);

struct RhoSet {
  MonotoneEnvelope1D rho1;
  MonotoneEnvelope1D rho2;
  MonotoneEnvelope2D rho3;
  MonotoneEnvelope1D rho4;
};

// Base-point change by d(x0,y0) = shift: rho1 unchanged,
// rho2'(t) = rho2(shift+t), rho3' = rho3 + shift, rho4' = rho4 + shift.
RhoSet rebase_bounds(const RhoSet& rhos, double shift);

enum class Divergence { kBounded, kDiverging, kInconclusive };
std::string to_string(Divergence d);

// Values of one envelope probe across >= 3 increasing truncation radii:
// diverging when each step grows by at least growth_threshold, bounded when
// the last two values agree within stabilize_tol.
Divergence divergence_diagnostic(const std::vector<double>& values,
                                 double growth_threshold,
                                 double stabilize_tol = 1e-9);

nlohmann::ordered_json envelope_to_json(const MonotoneEnvelope1D& e);
nlohmann::ordered_json envelope_to_json(const MonotoneEnvelope2D& e);

}  // namespace coarsegeo
