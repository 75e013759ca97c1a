#include "coarsegeo/functions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "coarsegeo/normed_space.hpp"

namespace coarsegeo {

namespace {

const NormedSpace& need_normed(const SpacePtr& space, const std::string& who) {
  const auto* n = dynamic_cast<const NormedSpace*>(space.get());
  if (!n) throw SpecError("function '" + who + "' needs a normed space");
  return *n;
}

int axis_param(const nlohmann::json& params, int dim) {
  int axis = params.contains("axis") ? params.at("axis").get<int>() : 0;
  if (axis < 0 || axis >= dim) {
    throw SpecError("function.params.axis: out of range");
  }
  return axis;
}

}  // namespace

SampledFunction make_builtin_function(const std::string& name,
                                      const nlohmann::json& params,
                                      const SpacePtr& space) {
  SampledFunction f;
  f.name = name;
  f.params = nlohmann::ordered_json(params);
  if (name == "constant") {
    double v = params.contains("value") ? params.at("value").get<double>()
                                        : 0.0;
    f.bound = std::abs(v);
    f.eval = [v](PointId) { return std::complex<double>(v, 0.0); };
    return f;
  }
  if (name == "radial") {
    const MetricSpace* sp = space.get();
    f.eval = [sp](PointId p) {
      double r = sp->base_distance(p);
      return std::complex<double>(r / (1.0 + r), 0.0);
    };
    return f;
  }
  const NormedSpace& ns = need_normed(space, name);
  int axis = axis_param(params, ns.dim());
  const NormedSpace* nsp = &ns;
  if (name == "ball-coordinate") {
    f.eval = [nsp, axis](PointId p) {
      auto v = nsp->offset(p);
      return std::complex<double>(v[axis] / (1.0 + nsp->norm(v)), 0.0);
    };
  } else if (name == "square-coordinate") {
    f.eval = [nsp, axis](PointId p) {
      auto v = nsp->offset(p);
      return std::complex<double>(v[axis] / (1.0 + std::abs(v[axis])), 0.0);
    };
  } else if (name == "angular") {
    f.eval = [nsp, axis](PointId p) {
      auto v = nsp->offset(p);
      double n = nsp->norm(v);
      return std::complex<double>(n == 0.0 ? 0.0 : v[axis] / n, 0.0);
    };
  } else {
    throw SpecError("unknown builtin function '" + name + "'");
  }
  return f;
}

SampledFunction make_table_function(const nlohmann::json& table,
                                    const SpacePtr& space, double bound) {
  if (!table.is_object()) {
    throw SpecError("function.table: expected an object of label -> value");
  }
  auto values = std::make_shared<std::map<std::string, std::complex<double>>>();
  for (const auto& [label, v] : table.items()) {
    std::complex<double> c;
    if (v.is_number()) {
      c = {v.get<double>(), 0.0};
    } else if (v.is_array() && v.size() == 2) {
      c = {v.at(0).get<double>(), v.at(1).get<double>()};
    } else {
      throw SpecError("function.table." + label +
                      ": expected number or [re, im]");
    }
    if (std::abs(c) > bound + kRealTol) {
      throw SpecError("function.table." + label + ": |f| exceeds bound");
    }
    values->emplace(label, c);
  }
  SampledFunction f;
  f.name = "table";
  f.bound = bound;
  const MetricSpace* sp = space.get();
  f.eval = [values, sp](PointId p) {
    auto it = values->find(sp->label(p));
    if (it == values->end()) {
      throw DomainError("table function undefined at " + sp->label(p));
    }
    return it->second;
  };
  return f;
}

VariationProfile variation_profiles(const SampledFunction& f,
                                    const ProductOracle& product,
                                    const std::vector<PointId>& sample,
                                    const std::vector<double>& q_ladder,
                                    const std::vector<double>& r_ladder,
                                    const std::vector<double>& b_ladder) {
  if (q_ladder.empty() && (r_ladder.empty() || b_ladder.empty())) {
    throw DomainError("variation profiles need non-empty ladders");
  }
  const MetricSpace& space = product.space();

  std::vector<std::complex<double>> fv(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    fv[i] = f.eval(sample[i]);
    if (std::abs(fv[i]) > f.bound + kRealTol) {
      throw DomainError("|f| exceeds its declared bound at " +
                        space.label(sample[i]));
    }
  }
  std::vector<double> d0(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    d0[i] = space.base_distance(sample[i]);
  }

  VariationProfile prof;
  prof.q_ladder = q_ladder;
  prof.r_ladder = r_ladder;
  prof.b_ladder = b_ladder;
  prof.gromov.assign(q_ladder.size(), {});
  prof.higson.assign(r_ladder.size(),
                     std::vector<ProfileEntry>(b_ladder.size()));

  auto bump = [&](ProfileEntry& e, double osc, std::size_t i, std::size_t j) {
    if (!e.attained || osc > e.value) {
      e.value = osc;
      e.witness = space.label(sample[i]) + " , " + space.label(sample[j]);
    }
    e.attained = true;
  };

  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      double osc = std::abs(fv[i] - fv[j]);
      double prod = product.value(sample[i], sample[j]);
      for (std::size_t qi = 0; qi < q_ladder.size(); ++qi) {
        if (prod >= q_ladder[qi]) bump(prof.gromov[qi], osc, i, j);
      }
      double dij = space.distance(sample[i], sample[j]);
      for (std::size_t ri = 0; ri < r_ladder.size(); ++ri) {
        if (dij > r_ladder[ri]) continue;
        for (std::size_t bi = 0; bi < b_ladder.size(); ++bi) {
          if (d0[i] > b_ladder[bi] && d0[j] > b_ladder[bi]) {
            bump(prof.higson[ri][bi], osc, i, j);
          }
        }
      }
    }
  }
  return prof;
}

nlohmann::ordered_json VariationProfile::to_json() const {
  auto entry = [](const ProfileEntry& e) {
    return nlohmann::ordered_json{{"value", e.value},
                                  {"attained", e.attained},
                                  {"witness", e.witness}};
  };
  nlohmann::ordered_json g = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < q_ladder.size(); ++i) {
    auto e = entry(gromov[i]);
    e["Q"] = q_ladder[i];
    g.push_back(e);
  }
  nlohmann::ordered_json h = nlohmann::ordered_json::array();
  for (std::size_t ri = 0; ri < r_ladder.size(); ++ri) {
    for (std::size_t bi = 0; bi < b_ladder.size(); ++bi) {
      auto e = entry(higson[ri][bi]);
      e["R"] = r_ladder[ri];
      e["B"] = b_ladder[bi];
      h.push_back(e);
    }
  }
  return {{"gromov", g}, {"higson", h}};
}

GromovHigsonReport gromov_implies_higson_check(
    const SampledFunction& f, const ProductOracle& product,
    const MonotoneEnvelope2D& rho3, const std::vector<double>& eps_ladder,
    const std::vector<double>& r_ladder, const std::vector<double>& q_ladder,
    const std::vector<PointId>& sample) {
  auto base_profile =
      variation_profiles(f, product, sample, q_ladder, {}, {0.0});

  GromovHigsonReport rep;
  for (double eps : eps_ladder) {
    GromovHigsonEntry entry;
    entry.epsilon = eps;
    for (std::size_t qi = 0; qi < q_ladder.size(); ++qi) {
      const auto& e = base_profile.gromov[qi];
      if (e.attained && e.value < eps) {
        entry.q = q_ladder[qi];
        break;
      }
    }
    if (entry.q.has_value()) {
      std::vector<double> bs;
      for (double R : r_ladder) bs.push_back(rho3.eval(*entry.q, R));
      auto hig = variation_profiles(f, product, sample, {}, r_ladder, bs);
      for (std::size_t ri = 0; ri < r_ladder.size(); ++ri) {
        GromovHigsonEntry::PerR row;
        row.R = r_ladder[ri];
        row.bound_B = bs[ri];
        const auto& he = hig.higson[ri][ri];
        row.higson_value = he.value;
        row.attained = he.attained;
        row.pass = !he.attained || he.value < eps;
        if (!row.pass) rep.all_pass = false;
        entry.rows.push_back(row);
      }
    }
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

nlohmann::ordered_json GromovHigsonReport::to_json() const {
  nlohmann::ordered_json entries_json = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : e.rows) {
      rows.push_back({{"R", r.R},
                      {"B", r.bound_B},
                      {"higson_value", r.higson_value},
                      {"attained", r.attained},
                      {"pass", r.pass}});
    }
    nlohmann::ordered_json je = {{"epsilon", e.epsilon}};
    if (e.q.has_value()) {
      je["Q"] = *e.q;
      je["rows"] = rows;
    } else {
      je["verdict"] = "not-gromov-at-epsilon";
    }
    entries_json.push_back(je);
  }
  return {{"entries", entries_json}, {"all_pass", all_pass}};
}

}  // namespace coarsegeo
