#pragma once

#include "famalab/netmodel.hpp"

#include <json.hpp>

namespace famalab {

/// JSON field names match the NetworkConfig members. Missing keys keep their
/// defaults; unknown keys raise ConfigError.
NetworkConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const NetworkConfig& cfg);

/// Applies the keys of `j` on top of `cfg` (same rules as config_from_json).
void apply_json(NetworkConfig& cfg, const nlohmann::json& j);

}  // namespace famalab
