#include "coarsegeo/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coarsegeo {

namespace {

void check_same_space(const ProductOracle& p, const ProductOracle& q) {
  if (&p.space() != &q.space()) {
    throw DomainError("compared products must share one space");
  }
}

// Upper envelope of `value_of` over keys `key_of` across all ordered pairs
// of the sample, diagonal included (the paper's quantifier runs over all
// x, y). Also reports the pair attaining the overall top value.
MonotoneEnvelope1D pair_envelope(const ProductOracle& key_of,
                                 const ProductOracle& value_of,
                                 const std::vector<PointId>& pts,
                                 std::string* worst_pair) {
  Envelope1DBuilder b;
  double top = -1.0;
  std::pair<PointId, PointId> arg{0, 0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      double key = key_of.value(pts[i], pts[j]);
      double val = value_of.value(pts[i], pts[j]);
      b.add(key, val);
      if (val > top) {
        top = val;
        arg = {pts[i], pts[j]};
      }
    }
  }
  if (worst_pair && top >= 0.0) {
    const MetricSpace& s = key_of.space();
    *worst_pair = s.label(arg.first) + " , " + s.label(arg.second);
  }
  return b.finish();
}

}  // namespace

DirectionReport preceq_check(const ProductOracle& p, const ProductOracle& q,
                             const SampleSpec& spec,
                             const ComparisonConfig& cfg) {
  check_same_space(p, q);
  if (cfg.truncation_ladder.size() < 3) {
    throw DomainError("preceq: truncation ladder needs >= 3 radii");
  }
  if (!std::is_sorted(cfg.truncation_ladder.begin(),
                      cfg.truncation_ladder.end())) {
    throw DomainError("preceq: truncation ladder must be increasing");
  }

  // S_R table per truncation radius: key (x|y)' , value (x|y).
  std::vector<MonotoneEnvelope1D> tables;
  std::string worst;
  for (double T : cfg.truncation_ladder) {
    SampleSpec s = spec;
    s.r_out = std::min(spec.r_out, T);
    auto pts = sample(p.space(), s);
    std::string* wp = (T == cfg.truncation_ladder.back()) ? &worst : nullptr;
    tables.push_back(pair_envelope(q, p, pts, wp));
  }

  DirectionReport rep;
  rep.s_r_table = tables.back();
  rep.worst_pair = worst;
  rep.holds = true;
  for (double key : cfg.key_ladder) {
    PreceqKeyDiag d;
    d.key = key;
    for (const auto& t : tables) d.values.push_back(t.eval(key));
    d.diagnosis = divergence_diagnostic(d.values, cfg.growth_threshold,
                                        cfg.stabilize_tol);
    if (d.diagnosis != Divergence::kBounded) rep.holds = false;
    rep.keys.push_back(d);
  }
  return rep;
}

nlohmann::ordered_json DirectionReport::to_json() const {
  nlohmann::ordered_json keys_json = nlohmann::ordered_json::array();
  for (const auto& k : keys) {
    keys_json.push_back({{"key", k.key},
                         {"values", k.values},
                         {"diagnosis", to_string(k.diagnosis)}});
  }
  return {{"holds_on_sample", holds},
          {"keys", keys_json},
          {"s_r_table", envelope_to_json(s_r_table)},
          {"worst_pair", worst_pair}};
}

ComparisonReport coarse_equivalence_check(const ProductOracle& p,
                                          const ProductOracle& q,
                                          const SampleSpec& spec,
                                          const ComparisonConfig& cfg) {
  ComparisonReport rep;
  rep.forward = preceq_check(p, q, spec, cfg);
  rep.backward = preceq_check(q, p, spec, cfg);
  rep.equivalent = rep.forward.holds && rep.backward.holds;

  // rho_plus / rho_minus witnesses from the largest truncation.
  SampleSpec s = spec;
  s.r_out = std::min(spec.r_out, cfg.truncation_ladder.back());
  auto pts = sample(p.space(), s);
  Envelope1DBuilder plus;
  std::vector<Constraint1D> minus;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      double a = p.value(pts[i], pts[j]);
      double b = q.value(pts[i], pts[j]);
      plus.add(a, b);
      minus.push_back({a, b});
    }
  }
  rep.rho_plus = plus.finish();
  rep.rho_minus = LowerEnvelope1D::from_constraints(std::move(minus));
  for (double key : cfg.key_ladder) {
    double v = rep.rho_minus.eval(key);
    if (std::isfinite(v)) rep.rho_minus_trend.push_back({key, v});
  }
  return rep;
}

nlohmann::ordered_json ComparisonReport::to_json() const {
  nlohmann::ordered_json trend = nlohmann::ordered_json::array();
  for (auto [k, v] : rho_minus_trend) trend.push_back({k, v});
  return {{"preceq_forward", forward.to_json()},
          {"preceq_backward", backward.to_json()},
          {"coarsely_equivalent", equivalent},
          {"rho_plus", envelope_to_json(rho_plus)},
          {"rho_minus_trend", trend}};
}

SandwichVerdict sandwich_check(const ProductOracle& low,
                               const ProductOracle& mid, SandwichMode mode,
                               double shift_or_scale,
                               const std::vector<PointId>& sample,
                               double tolerance) {
  check_same_space(low, mid);
  if (mode == SandwichMode::kAdditive && shift_or_scale < 0.0) {
    throw DomainError("additive sandwich needs shift >= 0");
  }
  if (mode == SandwichMode::kMultiplicative && shift_or_scale < 1.0) {
    throw DomainError("multiplicative sandwich needs scale >= 1");
  }
  SandwichVerdict v;
  v.worst_violation = -std::numeric_limits<double>::infinity();
  const MetricSpace& space = low.space();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i; j < sample.size(); ++j) {
      double lo = low.value(sample[i], sample[j]);
      double md = mid.value(sample[i], sample[j]);
      double viol;
      if (mode == SandwichMode::kAdditive) {
        viol = std::max(lo - md, md - (lo + shift_or_scale));
      } else {
        viol = md - shift_or_scale * lo;
      }
      if (viol > v.worst_violation) {
        v.worst_violation = viol;
        v.worst_pair =
            space.label(sample[i]) + " , " + space.label(sample[j]);
      }
    }
  }
  if (sample.empty()) v.worst_violation = 0.0;
  v.pass = v.worst_violation <= tolerance;
  return v;
}

nlohmann::ordered_json SandwichVerdict::to_json() const {
  return {{"pass", pass},
          {"worst_violation", worst_violation},
          {"worst_pair", worst_pair}};
}

}  // namespace coarsegeo
