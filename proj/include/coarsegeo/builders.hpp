#pragma once

#include <string>

#include "json.hpp"

#include "coarsegeo/functions.hpp"
#include "coarsegeo/products.hpp"
#include "coarsegeo/sampling.hpp"

namespace coarsegeo {

// Space-spec JSON:
//   {"kind": "fixture"|"graph"|"normed", "name": ..., "params": {...},
//    "basepoint": ...}
// Fixtures: paper-grid {columns}, star {rays}, paper-Y, paper-Z.
// Graphs: rooted-tree {branching, depth, max_vertices}, grid-graph
// {width, height}, weighted-graph {vertices, edges: [[u,v,w],...]} with an
// optional integer basepoint.
// Normed: euclidean {dim, p, step} with an optional coordinate basepoint.
// Errors name the offending field path.
SpacePtr build_space(const nlohmann::json& spec);

SpacePtr build_fixture(const std::string& name, const nlohmann::json& params);

// Product descriptor JSON:
//   {"construction": "gromov"|"trivial"|"busemann"|"family"|
//    "compactification"|"restriction", "params": {...}}
// busemann {D}; family {D}; compactification {model: "ball"|"square"};
// restriction {subset: "paper-Y"|"paper-Z"|"whole", inner: descriptor}.
ProductPtr build_product(const nlohmann::json& descriptor, SpacePtr space);

// Function spec: {"builtin": name, "params": {...}} or
// {"table": {...}, "bound": M}.
SampledFunction build_function(const nlohmann::json& spec,
                               const SpacePtr& space);

SampleSpec parse_sample_spec(const nlohmann::json& j, const std::string& path);
nlohmann::ordered_json sample_spec_to_json(const SampleSpec& spec);

}  // namespace coarsegeo
