#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bgkc/experiments.hpp"

namespace bgkc {

/// Reads a JSON scenario file, fills defaults and validates it. Every problem
/// found is reported at once through ValidationError.
ScenarioConfig parse_config(const std::filesystem::path& path);
ScenarioConfig config_from_json(const nlohmann::json& j);

/// All keys with their effective values, in a fixed order.
nlohmann::ordered_json to_json(const ScenarioConfig& c);

/// Throws ValidationError listing every violated constraint.
void validate(const ScenarioConfig& c);

/// FNV-1a 64 of the canonical dump of to_json(c), as 16 hex digits.
std::string config_hash(const ScenarioConfig& c);

}  // namespace bgkc
