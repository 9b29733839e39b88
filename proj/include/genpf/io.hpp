#pragma once

#include "genpf/generators.hpp"
#include "genpf/rational.hpp"
#include "genpf/system.hpp"

#include <json.hpp>

#include <string>

namespace genpf {

using Json = nlohmann::ordered_json;

/// Instance format: {"n", "m", "gains"} with signed entries (row = entity),
/// or {"supporter_gains", "repressor_gains"}. Entries are numbers or
/// "p/q" strings. Throws std::invalid_argument naming the offending field.
GainSystem system_from_json(const Json& doc);

/// Signed form; integers as numbers, other rationals as "p/q" strings.
Json system_to_json(const GainSystem& system);

Rational rational_from_json(const Json& value, const std::string& where);

/// Integer as a JSON number, anything else as "p/q".
Json rational_to_json(const Rational& value);

/// {"alpha", "receivers": [[x, y, ...]], "transmitters": [{"position", "receiver"}]}
MisoScenario miso_from_json(const Json& doc);
Json miso_to_json(const MisoScenario& scenario);

/// {"industries": [...], "commodities": [...], "production": [[...]], "requirements": [[...]]}
EconomyScenario economy_from_json(const Json& doc);
Json economy_to_json(const EconomyScenario& scenario);

/// Throws Error with "malformed JSON" or "cannot read" in the message.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace genpf
