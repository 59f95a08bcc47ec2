#pragma once

// JSON forms of triangulations, move words, coordinate points, covectors
// and rank reports. Parsing errors surface as std::invalid_argument.

#include "teich/classical.hpp"
#include "teich/homology.hpp"
#include "teich/triangulation.hpp"

#include <json.hpp>

namespace teich::json_io {

using Json = nlohmann::ordered_json;

// {genus, punctures, triangles:[{id, slots, corners}], gluing:[[[t,s],[t,s]]...], reembedded}
Json to_json(const DecoratedTriangulation& dit);
// `corners` and `reembedded` are optional; without corners the punctures
// are recomputed from the gluing.
DecoratedTriangulation triangulation_from_json(const Json& j);

Json to_json(const Isomorphism& iso);
Isomorphism isomorphism_from_json(const Json& j);

// [{op:"flip",edge}|{op:"rot",tri}|{op:"relabel",map}]
Json to_json(const MoveWord& word);
MoveWord word_from_json(const Json& j);

// {"<edge id>": "p/q"}
Json to_json(const PennerPoint& p);
PennerPoint penner_from_json(const Json& j);
// {"<triangle id>": ["p/q", "p/q"]}
Json to_json(const KashaevPoint& k);
KashaevPoint kashaev_from_json(const Json& j);

Json to_json(const LogCovector& u);
Json to_json(const LogBilinearForm& form);
Json to_json(const ExactnessReport& report);
Json to_json(const HomologyCycle& cycle);

}  // namespace teich::json_io
