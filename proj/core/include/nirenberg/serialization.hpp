#pragma once

#include <nlohmann/json.hpp>

#include "nirenberg/census.hpp"
#include "nirenberg/flow.hpp"
#include "nirenberg/quadrature.hpp"

namespace nirenberg {

using json = nlohmann::json;

// {"dimension": n, "kappa0": k, "terms": [{"monomial": "x1*x2", "coeff": c}, ...]}
ScalarField field_from_json(const json& j);
json to_json(const ScalarField& K);

// {"q": .., "p": .., "eps": .., "bubbles": [{"alpha": .., "point": [...], "lambda": ..}, ...]}
// with the q boundary bubbles listed first.
Configuration configuration_from_json(const json& j);
json to_json(const Configuration& cfg);

FlowParams flow_params_from_json(const json& j, FlowParams base = {});
json to_json(const FlowParams& p);

json to_json(const ConstantsTable& ct);
json to_json(const CriticalPointRecord& r);
json to_json(const AssumptionReport& a);
json to_json(const ClassifiedSets& s);
json to_json(const CensusEntry& e);
json to_json(const ExistenceVerdict& v);
json to_json(const ExistenceReport& r);
json to_json(const RegionLabel& l);
json to_json(const Certificate& c);

Vec vec_from_json(const json& j);
json to_json(const Vec& v);

}  // namespace nirenberg
