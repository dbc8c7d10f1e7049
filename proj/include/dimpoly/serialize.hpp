#pragma once

#include <json.hpp>

#include "dimpoly/binompoly.hpp"
#include "dimpoly/extdim.hpp"

namespace dimpoly {

using Json = nlohmann::ordered_json;

Json to_json(const NumPoly& p);
NumPoly numpoly_from_json(const Json& j);

Json to_json(const InvariantSummary& inv);
Json to_json(const DimPolyResult& result);

}  // namespace dimpoly
