#include "coarsegeo/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coarsegeo {

bool vn_related(const ProductOracle& product, double n, PointId x, PointId y) {
  if (n < 1.0) throw DomainError("V_n needs n >= 1");
  if (product.value(x, y) > n) return true;
  return product.space().distance(x, y) < 1.0 / n;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<ShadowCell> cells_from_components(
    const MetricSpace& space, const std::vector<PointId>& pts, UnionFind& uf,
    double lo, double hi, double n) {
  std::vector<std::vector<PointId>> groups(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    groups[uf.find(i)].push_back(pts[i]);
  }
  std::vector<ShadowCell> cells;
  for (auto& g : groups) {
    if (g.empty()) continue;
    std::sort(g.begin(), g.end(), [&](PointId a, PointId b) {
      return space.point_less(a, b);
    });
    ShadowCell c;
    c.representative = g.front();
    c.members = std::move(g);
    c.band_lo = lo;
    c.band_hi = hi;
    c.n = n;
    cells.push_back(std::move(c));
  }
  std::sort(cells.begin(), cells.end(),
            [&](const ShadowCell& a, const ShadowCell& b) {
              return space.point_less(a.representative, b.representative);
            });
  return cells;
}

}  // namespace

std::vector<ShadowCell> shadow_cells_on(const ProductOracle& product,
                                        const std::vector<PointId>& sample,
                                        double r_in, double r_out, double n) {
  if (n < 1.0) throw DomainError("V_n needs n >= 1");
  UnionFind uf(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      if (uf.find(i) != uf.find(j) &&
          vn_related(product, n, sample[i], sample[j])) {
        uf.unite(i, j);
      }
    }
  }
  return cells_from_components(product.space(), sample, uf, r_in, r_out, n);
}

std::vector<ShadowCell> shadow_cells(const ProductOracle& product, double r_in,
                                     double r_out, double n,
                                     const SampleSpec& spec) {
  auto pts = annulus_sample(product.space(), r_in, r_out, spec);
  return shadow_cells_on(product, pts, r_in, r_out, n);
}

BoundaryProfile refinement_profile(const ProductOracle& product,
                                   const std::vector<double>& radius_ladder,
                                   const std::vector<double>& n_ladder,
                                   const SampleSpec& spec) {
  if (radius_ladder.size() < 2) {
    throw DomainError("refinement profile needs >= 2 ladder radii");
  }
  if (!std::is_sorted(radius_ladder.begin(), radius_ladder.end())) {
    throw DomainError("radius ladder must be increasing");
  }
  BoundaryProfile prof;
  // Bands one ladder step wide; the last band keeps the previous width.
  for (std::size_t i = 0; i < radius_ladder.size(); ++i) {
    double lo = radius_ladder[i];
    double hi = (i + 1 < radius_ladder.size())
                    ? radius_ladder[i + 1] - 2.0 * kRadiusTol
                    : radius_ladder[i] +
                          (radius_ladder[i] - radius_ladder[i - 1]) -
                          2.0 * kRadiusTol;
    prof.bands.push_back({lo, hi});
  }

  std::vector<std::vector<PointId>> band_pts;
  for (const auto& b : prof.bands) {
    band_pts.push_back(
        annulus_sample(product.space(), b.lo, b.hi, spec));
  }

  for (double n : n_ladder) {
    BoundaryProfile::Level level;
    level.n = n;
    for (std::size_t b = 0; b < prof.bands.size(); ++b) {
      level.cells.push_back(shadow_cells_on(product, band_pts[b],
                                            prof.bands[b].lo,
                                            prof.bands[b].hi, n));
    }
    // Links between consecutive bands: some member pair with (x|y) > n.
    for (std::size_t b = 0; b + 1 < prof.bands.size(); ++b) {
      for (std::size_t ci = 0; ci < level.cells[b].size(); ++ci) {
        for (std::size_t cj = 0; cj < level.cells[b + 1].size(); ++cj) {
          bool linked = false;
          for (PointId x : level.cells[b][ci].members) {
            for (PointId y : level.cells[b + 1][cj].members) {
              if (product.value(x, y) > n) {
                linked = true;
                break;
              }
            }
            if (linked) break;
          }
          if (linked) level.links.push_back({b, ci, cj});
        }
      }
    }
    // Chains: components of the link graph touching every band.
    std::vector<std::size_t> offset(prof.bands.size() + 1, 0);
    for (std::size_t b = 0; b < prof.bands.size(); ++b) {
      offset[b + 1] = offset[b] + level.cells[b].size();
    }
    UnionFind uf(offset.back());
    for (const auto& l : level.links) {
      uf.unite(offset[l.band] + l.from_cell, offset[l.band + 1] + l.to_cell);
    }
    std::vector<std::vector<bool>> touched;
    touched.assign(offset.back(), std::vector<bool>(prof.bands.size(), false));
    for (std::size_t b = 0; b < prof.bands.size(); ++b) {
      for (std::size_t c = 0; c < level.cells[b].size(); ++c) {
        touched[uf.find(offset[b] + c)][b] = true;
      }
    }
    std::size_t chains = 0;
    for (std::size_t root = 0; root < touched.size(); ++root) {
      if (uf.find(root) != root) continue;
      bool all = true;
      for (std::size_t b = 0; b < prof.bands.size(); ++b) {
        all = all && touched[root][b];
      }
      if (all && offset.back() > 0) ++chains;
    }
    level.persistent_chains = chains;
    prof.levels.push_back(std::move(level));
  }
  return prof;
}

nlohmann::ordered_json BoundaryProfile::to_json(
    const MetricSpace& space) const {
  nlohmann::ordered_json bands_json = nlohmann::ordered_json::array();
  for (const auto& b : bands) bands_json.push_back({b.lo, b.hi});
  nlohmann::ordered_json levels_json = nlohmann::ordered_json::array();
  for (const auto& lv : levels) {
    nlohmann::ordered_json cells_json = nlohmann::ordered_json::array();
    for (std::size_t b = 0; b < lv.cells.size(); ++b) {
      nlohmann::ordered_json band_cells = nlohmann::ordered_json::array();
      for (const auto& c : lv.cells[b]) {
        band_cells.push_back({{"representative", space.label(c.representative)},
                              {"size", c.members.size()}});
      }
      cells_json.push_back(band_cells);
    }
    nlohmann::ordered_json links_json = nlohmann::ordered_json::array();
    for (const auto& l : lv.links) {
      links_json.push_back({l.band, l.from_cell, l.to_cell});
    }
    levels_json.push_back({{"n", lv.n},
                           {"cells", cells_json},
                           {"links", links_json},
                           {"persistent_chains", lv.persistent_chains}});
  }
  return {{"bands", bands_json}, {"levels", levels_json}};
}

std::string BoundaryProfile::to_dot(const MetricSpace& space) const {
  std::string out = "digraph refinement {\n  rankdir=LR;\n";
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const auto& lv = levels[li];
    for (std::size_t b = 0; b < lv.cells.size(); ++b) {
      for (std::size_t c = 0; c < lv.cells[b].size(); ++c) {
        out += "  \"n" + std::to_string(lv.n) + "_b" + std::to_string(b) +
               "_c" + std::to_string(c) + "\" [label=\"" +
               space.label(lv.cells[b][c].representative) + " (" +
               std::to_string(lv.cells[b][c].members.size()) + ")\"];\n";
      }
    }
    for (const auto& l : lv.links) {
      out += "  \"n" + std::to_string(lv.n) + "_b" + std::to_string(l.band) +
             "_c" + std::to_string(l.from_cell) + "\" -> \"n" +
             std::to_string(lv.n) + "_b" + std::to_string(l.band + 1) +
             "_c" + std::to_string(l.to_cell) + "\";\n";
    }
  }
  out += "}\n";
  return out;
}

SequenceClassReport sequence_class_check(
    const ProductOracle& product, const std::vector<PointId>& seq_a,
    const std::vector<PointId>& seq_b, std::size_t horizon,
    const std::vector<double>& thresholds) {
  if (horizon == 0 || horizon > seq_a.size() || horizon > seq_b.size()) {
    throw DomainError("horizon exceeds sequence length");
  }
  auto tail_mins_self = [&](const std::vector<PointId>& s) {
    // tail_min[h] over pairs h <= i <= j < horizon.
    std::vector<double> tm(horizon, 0.0);
    for (std::size_t h = horizon; h-- > 0;) {
      double m = (h + 1 < horizon) ? tm[h + 1]
                                   : std::numeric_limits<double>::infinity();
      for (std::size_t j = h; j < horizon; ++j) {
        m = std::min(m, product.value(s[h], s[j]));
      }
      tm[h] = m;
    }
    return tm;
  };
  auto tail_mins_cross = [&]() {
    std::vector<double> tm(horizon, 0.0);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t h = horizon; h-- > 0;) {
      m = std::min(m, product.value(seq_a[h], seq_b[h]));
      tm[h] = m;
    }
    return tm;
  };

  auto verdicts = [&](const std::vector<double>& tm) {
    std::vector<SequenceVerdict> out;
    for (double thr : thresholds) {
      SequenceVerdict v;
      v.threshold = thr;
      for (std::size_t h = 0; h < tm.size(); ++h) {
        if (tm[h] > thr) {
          v.holds = true;
          v.witness_tail = static_cast<int>(h);
          break;
        }
      }
      out.push_back(v);
    }
    return out;
  };

  SequenceClassReport rep;
  rep.a_in_s_infty = verdicts(tail_mins_self(seq_a));
  rep.b_in_s_infty = verdicts(tail_mins_self(seq_b));
  rep.equivalent = verdicts(tail_mins_cross());
  return rep;
}

nlohmann::ordered_json SequenceClassReport::to_json() const {
  auto arr = [](const std::vector<SequenceVerdict>& vs) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& v : vs) {
      a.push_back({{"threshold", v.threshold},
                   {"holds", v.holds},
                   {"witness_tail", v.witness_tail}});
    }
    return a;
  };
  return {{"note", "finite-horizon evidence"},
          {"a_in_s_infty", arr(a_in_s_infty)},
          {"b_in_s_infty", arr(b_in_s_infty)},
          {"equivalent", arr(equivalent)}};
}

}  // namespace coarsegeo
