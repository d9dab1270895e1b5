#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "abiot/sim.hpp"

namespace abiot {

using nlohmann::json;

// Baked-in defaults for every config section. The committed calibration
// constants live here.
json default_config();

// Defaults overlaid with the user document. Unknown sections or keys are
// rejected with a ConfigError naming the offending path.
json merge_config(const json& user);

// Dotted-path override, e.g. "sim.seed=9". The value parses as JSON when
// possible, otherwise as a string.
void apply_override(json& doc, const std::string& kv);

// Builds a validated Scenario from a fully resolved document.
Scenario parse_scenario(const json& resolved);

json load_config_file(const std::string& path);

}  // namespace abiot
