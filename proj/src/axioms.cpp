#include "coarsegeo/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace coarsegeo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> base_distances(const MetricSpace& space,
                                   const std::vector<PointId>& sample) {
  std::vector<double> d0(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    d0[i] = space.base_distance(sample[i]);
  }
  return d0;
}

SampleCensus make_census(const std::vector<double>& d0) {
  SampleCensus c;
  c.points = d0.size();
  if (!d0.empty()) {
    auto [lo, hi] = std::minmax_element(d0.begin(), d0.end());
    c.min_radius = *lo;
    c.max_radius = *hi;
  }
  return c;
}

}  // namespace

nlohmann::ordered_json SampleCensus::to_json() const {
  return {{"points", points},
          {"min_radius", min_radius},
          {"max_radius", max_radius},
          {"pairs_scanned", pairs_scanned},
          {"triples_scanned", triples_scanned},
          {"triples_subsampled", triples_subsampled},
          {"seed", seed}};
}

CpEnvelopes extract_cp_envelopes(const ProductOracle& product,
                                 const std::vector<PointId>& sample,
                                 const ScanBudget& budget) {
  const MetricSpace& space = product.space();
  const std::size_t n = sample.size();
  auto d0 = base_distances(space, sample);
  auto triples = make_triple_list(n, budget);

  const int workers = resolve_workers(budget.workers);
  std::mutex merge_mu;
  Envelope1DBuilder rho1, rho2;
  Envelope2DBuilder rho3;

  std::vector<double> pself(n);
  for (std::size_t i = 0; i < n; ++i) {
    pself[i] = product.value(sample[i], sample[i]);
  }

  // Pair scan: CP2/CP3 constraints for every ordered pair (diagonal
  // included) plus the CP1 instances with repeated points.
  std::size_t pair_total = n * (n + 1) / 2;
  parallel_chunks(pair_total, workers, [&](std::size_t b, std::size_t e,
                                           int) {
    Envelope1DBuilder l1, l2;
    Envelope2DBuilder l3;
    // Flattened upper-triangular index (i <= j).
    for (std::size_t f = b; f < e; ++f) {
      std::size_t i = static_cast<std::size_t>(
          (std::sqrt(8.0 * static_cast<double>(f) + 1.0) - 1.0) / 2.0);
      while ((i + 1) * (i + 2) / 2 <= f) ++i;
      while (i * (i + 1) / 2 > f) --i;
      std::size_t j = f - i * (i + 1) / 2;
      // here j <= i
      if (i == j) {
        double p = pself[i];
        l2.add(d0[i], p);
        l3.add(p, 0.0, d0[i]);
        l1.add(p, p);  // (x,x,x)
        continue;
      }
      double p = product.value(sample[i], sample[j]);
      double dij = space.distance(sample[i], sample[j]);
      double pii = pself[i];
      double pjj = pself[j];
      l2.add(d0[i], p);
      l2.add(d0[j], p);
      l3.add(p, dij, d0[i]);
      l3.add(p, dij, d0[j]);
      // Degenerate CP1 triples over {x, z}.
      l1.add(p, std::min(pii, p));
      l1.add(p, std::min(pjj, p));
      l1.add(pii, p);
      l1.add(pjj, p);
    }
    std::lock_guard<std::mutex> lk(merge_mu);
    rho1.merge(std::move(l1));
    rho2.merge(std::move(l2));
    rho3.merge(std::move(l3));
  });

  // Triple scan: the three CP1 orientations per index triple.
  parallel_chunks(triples.triples.size(), workers,
                  [&](std::size_t b, std::size_t e, int) {
    Envelope1DBuilder l1;
    for (std::size_t f = b; f < e; ++f) {
      auto [i, j, k] = triples.triples[f];
      double pij = product.value(sample[i], sample[j]);
      double pjk = product.value(sample[j], sample[k]);
      double pik = product.value(sample[i], sample[k]);
      l1.add(pik, std::min(pij, pjk));
      l1.add(pjk, std::min(pij, pik));
      l1.add(pij, std::min(pik, pjk));
    }
    std::lock_guard<std::mutex> lk(merge_mu);
    rho1.merge(std::move(l1));
  });

  CpEnvelopes out;
  out.rho1 = rho1.finish();
  out.rho2 = rho2.finish();
  out.rho3 = rho3.finish();
  out.census = make_census(d0);
  out.census.pairs_scanned = pair_total;
  out.census.triples_scanned = triples.triples.size();
  out.census.triples_subsampled = triples.subsampled;
  out.census.seed = budget.seed;
  return out;
}

DeltaResult product_delta(const ProductOracle& product,
                          const std::vector<PointId>& sample,
                          const ScanBudget& budget) {
  const std::size_t n = sample.size();
  auto d0 = base_distances(product.space(), sample);
  auto triples = make_triple_list(n, budget);

  struct Best {
    double value = -kInf;
    std::size_t order = std::numeric_limits<std::size_t>::max();
    std::array<std::uint32_t, 3> xyz{0, 0, 0};  // (x, middle, z)
  };
  const int workers = resolve_workers(budget.workers);
  std::mutex merge_mu;
  Best best;

  parallel_chunks(triples.triples.size(), workers,
                  [&](std::size_t b, std::size_t e, int) {
    Best local;
    for (std::size_t f = b; f < e; ++f) {
      auto [i, j, k] = triples.triples[f];
      double pij = product.value(sample[i], sample[j]);
      double pjk = product.value(sample[j], sample[k]);
      double pik = product.value(sample[i], sample[k]);
      struct O {
        double v;
        std::array<std::uint32_t, 3> t;
      };
      O os[3] = {{std::min(pij, pjk) - pik, {i, j, k}},
                 {std::min(pij, pik) - pjk, {j, i, k}},
                 {std::min(pik, pjk) - pij, {i, k, j}}};
      for (const auto& o : os) {
        if (o.v > local.value ||
            (o.v == local.value && f < local.order)) {
          local.value = o.v;
          local.order = f;
          local.xyz = o.t;
        }
      }
    }
    std::lock_guard<std::mutex> lk(merge_mu);
    if (local.value > best.value ||
        (local.value == best.value && local.order < best.order)) {
      best = local;
    }
  });

  DeltaResult out;
  out.max_defect = best.order == std::numeric_limits<std::size_t>::max()
                       ? 0.0
                       : best.value;
  out.delta = std::max(0.0, out.max_defect);
  if (best.order != std::numeric_limits<std::size_t>::max()) {
    out.witness = {sample[best.xyz[0]], sample[best.xyz[1]],
                   sample[best.xyz[2]]};
  }
  out.census = make_census(d0);
  out.census.triples_scanned = triples.triples.size();
  out.census.triples_subsampled = triples.subsampled;
  out.census.seed = budget.seed;
  return out;
}

DeltaResult hyperbolicity_delta(const MetricSpace& space,
                                const std::vector<PointId>& sample,
                                const ScanBudget& budget) {
  auto space_ptr = SpacePtr(&space, [](const MetricSpace*) {});
  GromovProduct gp(space_ptr);
  return product_delta(gp, sample, budget);
}

Cp4Report check_cp4(const ProductOracle& product,
                    const std::vector<double>& R_ladder, double cap,
                    const std::vector<PointId>& sample) {
  if (R_ladder.empty()) throw DomainError("cp4: empty R ladder");
  if (cap < *std::max_element(R_ladder.begin(), R_ladder.end())) {
    throw DomainError("cp4: cap smaller than the largest ladder R");
  }
  const MetricSpace& space = product.space();
  const std::size_t n = sample.size();
  auto d0 = base_distances(space, sample);

  // Candidate witness radii: sampled radii within the cap, ascending.
  std::vector<double> candidates;
  for (double d : d0) {
    if (d <= cap + kRadiusTol) candidates.push_back(d);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  // Orderings by base distance for witness search (nearest first) and the
  // S sweep (farthest first).
  std::vector<std::size_t> by_near(n), by_far(n);
  for (std::size_t i = 0; i < n; ++i) by_near[i] = by_far[i] = i;
  std::sort(by_near.begin(), by_near.end(),
            [&](std::size_t a, std::size_t b) { return d0[a] < d0[b]; });
  std::sort(by_far.begin(), by_far.end(),
            [&](std::size_t a, std::size_t b) { return d0[a] > d0[b]; });

  Cp4Report report;
  report.cap = cap;
  report.census = make_census(d0);
  report.census.pairs_scanned = n * n * R_ladder.size();
  report.satisfied = true;

  for (double R : R_ladder) {
    // Nearest-to-base witness radius per point (first hit in ascending
    // base-distance order is the minimum).
    std::vector<double> W(n, kInf);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j : by_near) {
        if (product.value(sample[i], sample[j]) >= R - 1e-12) {
          W[i] = d0[j];
          break;
        }
      }
    }

    Cp4Entry entry;
    entry.R = R;
    for (double S : candidates) {
      bool ok = true;
      for (std::size_t idx : by_far) {
        if (d0[idx] <= S + kRadiusTol) break;  // rest are inside
        if (W[idx] > S + kRadiusTol) {
          ok = false;
          break;
        }
      }
      if (ok) {
        entry.S = S;
        break;
      }
    }
    if (!entry.S.has_value()) {
      report.satisfied = false;
      double top = candidates.empty() ? 0.0 : candidates.back();
      for (std::size_t idx : by_far) {
        if (d0[idx] > top + kRadiusTol && W[idx] > top + kRadiusTol) {
          entry.offender = space.label(sample[idx]);
          entry.offender_radius = d0[idx];
          break;
        }
      }
    }
    report.table.push_back(entry);
  }
  return report;
}

nlohmann::ordered_json Cp4Report::to_json() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& e : table) {
    nlohmann::ordered_json row;
    row["R"] = e.R;
    if (e.S.has_value()) {
      row["S"] = *e.S;
    } else {
      row["S"] = nullptr;
      row["offender"] = e.offender;
      row["offender_radius"] = e.offender_radius;
    }
    rows.push_back(row);
  }
  return {{"verdict",
           satisfied ? "satisfied-on-sample" : "no-witness-within-cap"},
          {"cap", cap},
          {"table", rows},
          {"census", census.to_json()}};
}

BoundCandidate make_bound_candidate(const std::string& name,
                                    const nlohmann::json& params) {
  BoundCandidate c;
  c.name = name;
  c.params = nlohmann::ordered_json(params);
  auto num = [&](const char* key, double fallback,
                 bool required = false) -> double {
    if (params.contains(key)) return params.at(key).get<double>();
    if (required) throw SpecError("bound '" + name + "' needs param " + key);
    return fallback;
  };
  if (name == "identity") {
    c.f1 = [](double t) { return t; };
  } else if (name == "double") {
    c.f1 = [](double t) { return 2.0 * t; };
  } else if (name == "affine") {
    double a = num("a", 1.0), b = num("b", 0.0);
    c.f1 = [a, b](double t) { return a * t + b; };
  } else if (name == "cp1-coarse-convex") {
    double E = num("E", 1.0), D = num("D", 0.0, true);
    double m = 5.0 * E * E * D;
    c.f1 = [m](double t) { return m * t; };
  } else if (name == "cp2-quasi-geodesic") {
    double l = num("lambda", 1.0), k = num("k", 0.0);
    c.f1 = [l, k](double t) { return l * t + l * k; };
  } else if (name == "gromov-cp3") {
    c.two_dim = true;
    c.f2 = [](double s, double t) { return 2.0 * s + t; };
  } else if (name == "busemann-cp3") {
    double D = num("D", 0.0, true);
    c.two_dim = true;
    c.f2 = [D](double s, double t) { return s + (2.0 / D) * s * t + t; };
  } else if (name == "cp3-coarse-convex") {
    double l = num("lambda", 1.0), k = num("k", 0.0), E = num("E", 1.0);
    double ts = num("theta_slope", 1.0), to = num("theta_offset", 0.0);
    c.two_dim = true;
    c.f2 = [l, k, E, ts, to](double s, double t) {
      double th = ts * t + to;
      return l * E * s * (1.0 + l * th + t + 2.0 * k) + l * th + k;
    };
  } else {
    throw SpecError("unregistered bound candidate '" + name + "'");
  }
  return c;
}

BoundVerdict bound_check(const MonotoneEnvelope1D& env,
                         const BoundCandidate& candidate, double tolerance) {
  if (candidate.two_dim) {
    throw DomainError("bound '" + candidate.name +
                      "' is two-dimensional; envelope is not");
  }
  BoundVerdict v;
  v.worst_violation = -kInf;
  for (const auto& bp : env.breakpoints()) {
    double viol = bp.value - candidate.f1(bp.key);
    if (viol > v.worst_violation) {
      v.worst_violation = viol;
      v.at_key_s = bp.key;
    }
  }
  if (env.breakpoints().empty()) v.worst_violation = 0.0;
  v.pass = v.worst_violation <= tolerance;
  return v;
}

BoundVerdict bound_check(const MonotoneEnvelope2D& env,
                         const BoundCandidate& candidate, double tolerance) {
  if (!candidate.two_dim) {
    throw DomainError("bound '" + candidate.name +
                      "' is one-dimensional; envelope is not");
  }
  BoundVerdict v;
  v.worst_violation = -kInf;
  for (const auto& bp : env.breakpoints()) {
    double viol = bp.value - candidate.f2(bp.s, bp.t);
    if (viol > v.worst_violation) {
      v.worst_violation = viol;
      v.at_key_s = bp.s;
      v.at_key_t = bp.t;
    }
  }
  if (env.breakpoints().empty()) v.worst_violation = 0.0;
  v.pass = v.worst_violation <= tolerance;
  return v;
}

nlohmann::ordered_json BoundVerdict::to_json() const {
  return {{"pass", pass},
          {"worst_violation", worst_violation},
          {"at_key", {at_key_s, at_key_t}}};
}

RhoSet rebase_bounds(const RhoSet& rhos, double shift) {
  if (shift < 0.0) throw DomainError("rebase shift must be >= 0");
  RhoSet out;
  out.rho1 = rhos.rho1;
  out.rho2 = rhos.rho2.with_keys_shifted(shift);
  out.rho3 = rhos.rho3.with_values_shifted(shift);
  out.rho4 = rhos.rho4.with_values_shifted(shift);
  return out;
}

std::string to_string(Divergence d) {
  switch (d) {
    case Divergence::kBounded: return "bounded";
    case Divergence::kDiverging: return "diverging";
    case Divergence::kInconclusive: return "inconclusive";
  }
  return "?";
}

Divergence divergence_diagnostic(const std::vector<double>& values,
                                 double growth_threshold,
                                 double stabilize_tol) {
  if (values.size() < 3) {
    throw DomainError("divergence diagnostic needs >= 3 truncation radii");
  }
  if (growth_threshold <= 0.0) {
    throw DomainError("growth threshold must be > 0");
  }
  bool diverging = true;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i + 1] - values[i] < growth_threshold) {
      diverging = false;
      break;
    }
  }
  if (diverging) return Divergence::kDiverging;
  if (std::abs(values.back() - values[values.size() - 2]) <= stabilize_tol) {
    return Divergence::kBounded;
  }
  return Divergence::kInconclusive;
}

nlohmann::ordered_json envelope_to_json(const MonotoneEnvelope1D& e) {
  nlohmann::ordered_json bps = nlohmann::ordered_json::array();
  for (const auto& c : e.breakpoints()) bps.push_back({c.key, c.value});
  return {{"breakpoints", bps}};
}

nlohmann::ordered_json envelope_to_json(const MonotoneEnvelope2D& e) {
  nlohmann::ordered_json bps = nlohmann::ordered_json::array();
  for (const auto& c : e.breakpoints()) bps.push_back({c.s, c.t, c.value});
  return {{"breakpoints", bps}};
}

}  // namespace coarsegeo
