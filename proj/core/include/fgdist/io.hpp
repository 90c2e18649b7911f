#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "fgdist/reconstruct.hpp"

namespace fgdist {

using nlohmann::json;

// Law:
//   { "p": 2, "cap": 6, "coords": ["x", "y"],
//     "comul": { "x": "x' + x'' + x'*x''", "y": "..." },
//     "blocks": [ { "kind": "multiplicative", "coords": ["x"] }, ... ] }
// "cap" may be omitted by readers that supply one.
json law_to_json(const FormalGroupLaw& law);
FormalGroupLaw law_from_json(const json& j, std::optional<unsigned> default_cap = {});
// law_from_json followed by validate(); throws AxiomError on the first failure.
FormalGroupLaw load_custom(const json& j, std::optional<unsigned> default_cap = {});

// Splay: { "p": 2, "level": 1, "blocks": [ law, law, ... ] }
json splay_to_json(const SplayDescription& splay);
std::shared_ptr<const SplayDescription> splay_from_json(const json& j);

// Table: { "splay": ..., "entries": [ { "eta": "y", "zeta": "x^2", "value": [ ["y", 1] ] } ] }
// with value terms as [monomial word, coefficient], entries sorted by (eta, zeta).
json table_to_json(const PoissonTable& table);
PoissonTable table_from_json(const json& j);
PoissonTable table_from_json(const json& j, std::shared_ptr<const SplayDescription> splay);

// Algebra: { "splay", "table", "basis": [words], "products": [ { "u", "v", "value" } ],
//            "comul": [ { "u", "value": [ [left, right, coeff] ] } ] }
json algebra_to_json(const ReconstructedAlgebra& algebra);
ReconstructedAlgebra algebra_from_json(const json& j);

json report_to_json(const CheckReport& report);

json combination_to_json(const LevelShape& shape, const Combination& c);
Combination combination_from_json(const LevelShape& shape, const json& j);

// json::parse with ParseError on failure.
json parse_json(const std::string& text);

}  // namespace fgdist
