#pragma once

#include "gclink/great_circle.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace gclink {

/// {"components": [{"basis": [[4 numbers], [4 numbers]]}, ...]}
nlohmann::json link_to_json(const GCLink& link);

/// Accepts the object above, or any object holding it under "link".
/// Throws ParseError on malformed input; the GCLink audits still apply
/// (NotOrthonormal, NotTransverse).
GCLink link_from_json(const nlohmann::json& j);
GCLink parse_link(const std::string& text);

/// Serializes like json::dump but prints every double with %.17g, so
/// floating values survive a round trip bit for bit.
std::string dump_json(const nlohmann::json& j, int indent = 2);

}  // namespace gclink
