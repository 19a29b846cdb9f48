#pragma once

#include <nlohmann/json.hpp>

#include "ghm/blanusa.hpp"
#include "ghm/distance_table.hpp"
#include "ghm/gh_estimate.hpp"
#include "ghm/hausdorff.hpp"
#include "ghm/latent_graph.hpp"

// JSON forms of the public value types. Candidate axes are written 0-based.
namespace ghm {

using json = nlohmann::json;

json to_json(const sampling_spec& s);
sampling_spec sampling_spec_from_json(const json& j);

json to_json(const quadrature_spec& q);
quadrature_spec quadrature_spec_from_json(const json& j);

json to_json(const blanusa::constants& k);
blanusa::constants constants_from_json(const json& j);

json to_json(const embedding_candidate& c);
embedding_candidate candidate_from_json(const json& j);

json to_json(const candidate_grid_spec& g);
candidate_grid_spec grid_spec_from_json(const json& j);

json to_json(const gh_estimate& e);
gh_estimate estimate_from_json(const json& j);

// {"E2-S2": {"value", "provenance"}, "E2-H2": ..., "S2-H2": ...}
json to_json(const distance_table& t);
distance_table table_from_json(const json& j);

json to_json(const hausdorff_result& r);
json to_json(const search_result& r);
json to_json(const blanusa::pullback_report& r);

}  // namespace ghm
