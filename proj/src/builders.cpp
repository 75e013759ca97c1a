#include "coarsegeo/builders.hpp"

#include <algorithm>
#include <set>

#include "coarsegeo/family.hpp"
#include "coarsegeo/fixtures.hpp"
#include "coarsegeo/graph_space.hpp"
#include "coarsegeo/model.hpp"
#include "coarsegeo/normed_space.hpp"

namespace coarsegeo {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& path) {
  if (!j.is_object()) throw SpecError(path + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) {
      throw SpecError(path + "." + key + ": unknown key");
    }
  }
}

double num_at(const json& j, const std::string& key, const std::string& path,
              double fallback, bool required = false) {
  if (!j.contains(key)) {
    if (required) throw SpecError(path + "." + key + ": missing");
    return fallback;
  }
  if (!j.at(key).is_number()) {
    throw SpecError(path + "." + key + ": expected a number");
  }
  return j.at(key).get<double>();
}

long long int_at(const json& j, const std::string& key,
                 const std::string& path, long long fallback,
                 bool required = false) {
  if (!j.contains(key)) {
    if (required) throw SpecError(path + "." + key + ": missing");
    return fallback;
  }
  if (!j.at(key).is_number_integer()) {
    throw SpecError(path + "." + key + ": expected an integer");
  }
  return j.at(key).get<long long>();
}

SpacePtr build_graph_space(const std::string& name, const json& params,
                           const json& spec) {
  const std::string path = "space.params";
  if (name == "rooted-tree") {
    check_keys(params, {"branching", "depth", "max_vertices"}, path);
    long long b = int_at(params, "branching", path, 2);
    long long d = int_at(params, "depth", path, 7);
    long long cap = int_at(params, "max_vertices", path, 1 << 20);
    return GraphSpace::rooted_tree(static_cast<int>(b), static_cast<int>(d),
                                   static_cast<std::size_t>(cap));
  }
  if (name == "grid-graph") {
    check_keys(params, {"width", "height"}, path);
    long long w = int_at(params, "width", path, 10);
    long long h = int_at(params, "height", path, 10);
    return GraphSpace::grid_graph(static_cast<int>(w), static_cast<int>(h));
  }
  if (name == "weighted-graph") {
    check_keys(params, {"vertices", "edges"}, path);
    long long v = int_at(params, "vertices", path, 0, true);
    if (v <= 0) throw SpecError(path + ".vertices: must be positive");
    if (!params.contains("edges") || !params.at("edges").is_array()) {
      throw SpecError(path + ".edges: expected an array");
    }
    std::vector<GraphSpace::Edge> edges;
    const auto& earr = params.at("edges");
    for (std::size_t i = 0; i < earr.size(); ++i) {
      const auto& e = earr.at(i);
      std::string epath = path + ".edges[" + std::to_string(i) + "]";
      if (!e.is_array() || e.size() != 3) {
        throw SpecError(epath + ": expected [u, v, w]");
      }
      double w = e.at(2).get<double>();
      if (w < 0.0) throw SpecError(epath + "[2]: negative edge weight");
      edges.push_back({e.at(0).get<PointId>(), e.at(1).get<PointId>(), w});
    }
    PointId base = 0;
    if (spec.contains("basepoint")) {
      if (!spec.at("basepoint").is_number_integer()) {
        throw SpecError("space.basepoint: expected a vertex index");
      }
      base = spec.at("basepoint").get<PointId>();
    }
    return std::make_shared<GraphSpace>(static_cast<std::size_t>(v),
                                        std::move(edges), base,
                                        "weighted-graph");
  }
  throw SpecError("space.name: unknown graph '" + name + "'");
}

}  // namespace

SpacePtr build_fixture(const std::string& name, const json& params) {
  const std::string path = "space.params";
  if (name == "paper-grid") {
    check_keys(params, {"columns"}, path);
    return std::make_shared<GridFixture>(int_at(params, "columns", path, 8),
                                         "paper-grid");
  }
  if (name == "star") {
    check_keys(params, {"rays"}, path);
    long long rays = int_at(params, "rays", path, 3);
    return std::make_shared<GridFixture>(rays, "star");
  }
  if (name == "paper-Y") {
    check_keys(params, {}, path);
    return std::make_shared<PaperYSpace>();
  }
  if (name == "paper-Z") {
    check_keys(params, {}, path);
    return std::make_shared<PaperZSpace>();
  }
  throw SpecError("space.name: unknown fixture '" + name + "'");
}

SpacePtr build_space(const json& spec) {
  check_keys(spec, {"kind", "name", "params", "basepoint"}, "space");
  if (!spec.contains("kind")) throw SpecError("space.kind: missing");
  std::string kind = spec.at("kind").get<std::string>();
  std::string name =
      spec.contains("name") ? spec.at("name").get<std::string>() : "";
  json params = spec.contains("params") ? spec.at("params") : json::object();

  if (kind == "fixture") {
    if (spec.contains("basepoint")) {
      throw SpecError("space.basepoint: fixtures have a fixed base point");
    }
    return build_fixture(name, params);
  }
  if (kind == "graph") {
    return build_graph_space(name, params, spec);
  }
  if (kind == "normed") {
    if (!name.empty() && name != "euclidean" && name != "lp" &&
        name != "l1" && name != "linf") {
      throw SpecError("space.name: unknown normed space '" + name + "'");
    }
    check_keys(params, {"dim", "p", "step"}, "space.params");
    long long dim = int_at(params, "dim", "space.params", 2);
    double p = num_at(params, "p", "space.params",
                      name == "l1" ? 1.0 : (name == "linf" ? 0.0 : 2.0));
    double step = num_at(params, "step", "space.params", 1.0);
    std::vector<double> base;
    if (spec.contains("basepoint")) {
      const auto& b = spec.at("basepoint");
      if (!b.is_array()) {
        throw SpecError("space.basepoint: expected a coordinate array");
      }
      for (const auto& c : b) base.push_back(c.get<double>());
    }
    return std::make_shared<NormedSpace>(static_cast<int>(dim), p, step,
                                         std::move(base));
  }
  throw SpecError("space.kind: expected fixture | graph | normed");
}

ProductPtr build_product(const json& descriptor, SpacePtr space) {
  check_keys(descriptor, {"construction", "params"}, "product");
  if (!descriptor.contains("construction")) {
    throw SpecError("product.construction: missing");
  }
  std::string kind = descriptor.at("construction").get<std::string>();
  json params = descriptor.contains("params") ? descriptor.at("params")
                                              : json::object();
  const std::string path = "product.params";

  if (kind == "gromov") {
    check_keys(params, {}, path);
    return std::make_shared<GromovProduct>(space);
  }
  if (kind == "trivial") {
    check_keys(params, {}, path);
    return std::make_shared<TrivialProduct>(space);
  }
  if (kind == "busemann") {
    check_keys(params, {"D"}, path);
    double D = num_at(params, "D", path, 0.0, true);
    if (D <= 0.0) throw SpecError(path + ".D: must be positive");
    return std::make_shared<BusemannProduct>(space, D);
  }
  if (kind == "family") {
    check_keys(params, {"D"}, path);
    double D = num_at(params, "D", path, 0.0, true);
    if (auto g = std::dynamic_pointer_cast<const GraphSpace>(space)) {
      auto fam = build_graph_family(g);
      if (D < fam.admissible_D()) {
        throw SpecError(path + ".D: below admissibility threshold " +
                        std::to_string(fam.admissible_D()));
      }
      return std::make_shared<FamilyProduct>(std::move(fam), D);
    }
    if (std::dynamic_pointer_cast<const NormedSpace>(space)) {
      // Geodesic-segment family of a normed space: the busemann product
      // with the coarsely convex admissibility (C = 0, so D >= 1).
      if (D < 1.0) {
        throw SpecError(path + ".D: below admissibility threshold 1");
      }
      return std::make_shared<BusemannProduct>(space, D);
    }
    throw SpecError("product: family products need a graph or normed space");
  }
  if (kind == "compactification") {
    check_keys(params, {"model"}, path);
    std::string model = params.contains("model")
                            ? params.at("model").get<std::string>()
                            : "ball";
    auto normed = std::dynamic_pointer_cast<const NormedSpace>(space);
    if (!normed) {
      throw SpecError("product: compactification needs a normed space");
    }
    if (model == "ball") {
      return std::make_shared<CompactificationProduct>(
          space, CompactModelEmbedding::ball(*normed));
    }
    if (model == "square") {
      return std::make_shared<CompactificationProduct>(
          space, CompactModelEmbedding::square(*normed));
    }
    throw SpecError(path + ".model: expected ball | square");
  }
  if (kind == "restriction") {
    check_keys(params, {"subset", "inner"}, path);
    if (!params.contains("inner")) {
      throw SpecError(path + ".inner: missing inner product descriptor");
    }
    auto inner = build_product(params.at("inner"), space);
    std::string subset = params.contains("subset")
                             ? params.at("subset").get<std::string>()
                             : "whole";
    PointPredicate pred;
    if (subset == "paper-Y") {
      pred = paper_y_predicate();
    } else if (subset == "paper-Z") {
      pred = paper_z_predicate();
    } else if (subset == "whole") {
      pred = [](const MetricSpace&, PointId) { return true; };
    } else {
      throw SpecError(path + ".subset: expected paper-Y | paper-Z | whole");
    }
    return restrict_product(std::move(inner), std::move(pred), subset);
  }
  throw SpecError("product.construction: unknown construction '" + kind +
                  "'");
}

SampledFunction build_function(const json& spec, const SpacePtr& space) {
  check_keys(spec, {"builtin", "params", "table", "bound"}, "function");
  if (spec.contains("builtin")) {
    return make_builtin_function(
        spec.at("builtin").get<std::string>(),
        spec.contains("params") ? spec.at("params") : json::object(), space);
  }
  if (spec.contains("table")) {
    double bound = num_at(spec, "bound", "function", 1.0);
    return make_table_function(spec.at("table"), space, bound);
  }
  throw SpecError("function: expected builtin or table");
}

SampleSpec parse_sample_spec(const json& j, const std::string& path) {
  check_keys(j, {"strategy", "r_in", "r_out", "per_shell", "shell_step",
                 "seed"},
             path);
  SampleSpec spec;
  if (j.contains("strategy")) {
    spec.strategy =
        sample_strategy_from_string(j.at("strategy").get<std::string>());
  }
  spec.r_in = num_at(j, "r_in", path, spec.r_in);
  spec.r_out = num_at(j, "r_out", path, spec.r_out);
  spec.per_shell =
      static_cast<int>(int_at(j, "per_shell", path, spec.per_shell));
  spec.shell_step = num_at(j, "shell_step", path, spec.shell_step);
  spec.seed = static_cast<std::uint64_t>(int_at(j, "seed", path, 0));
  if (spec.r_in < 0.0 || spec.r_in > spec.r_out) {
    throw SpecError(path + ": needs 0 <= r_in <= r_out");
  }
  return spec;
}

nlohmann::ordered_json sample_spec_to_json(const SampleSpec& spec) {
  return {{"strategy", to_string(spec.strategy)},
          {"r_in", spec.r_in},
          {"r_out", spec.r_out},
          {"per_shell", spec.per_shell},
          {"shell_step", spec.shell_step},
          {"seed", spec.seed}};
}

}  // namespace coarsegeo
