#pragma once

// JSON forms of the report types, schema "hasselines/1".

#include "hasse/cohomology.hpp"
#include "hasse/construct.hpp"
#include "hasse/counting.hpp"
#include "hasse/galois.hpp"

#include <json.hpp>

namespace hasse::report {

using nlohmann::json;

inline constexpr const char* kSchema = "hasselines/1";

json to_json(const CycElt& x); // {"field": m, "value": "..."}
CycElt elt_from_json(const json& j);

json to_json(const DiagonalSurface& S);
DiagonalSurface surface_from_json(const json& j);

json to_json(const LineComponent& c);
json to_json(const LineWitness& w);
LineWitness line_from_json(const json& j);

json to_json(const H1Factor& f);
H1Factor h1_factor_from_json(const json& j);
json to_json(const PredictionReport& r);
PredictionReport prediction_from_json(const json& j);

json to_json(const GaloisElement& g);
GaloisElement element_from_json(const json& j);
json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);
VerdictKind verdict_kind_from_string(const std::string& s);

json to_json(const BetaCertificate& c);
BetaCertificate beta_from_json(const json& j);
json to_json(const Construction& c);
Construction construction_from_json(const json& j);

json to_json(const CountReport& r);
CountReport count_from_json(const json& j);

} // namespace hasse::report
