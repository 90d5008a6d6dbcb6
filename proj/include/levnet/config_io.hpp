#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "levnet/interbank_sim.hpp"

namespace levnet {

/// Names of every SimConfig field, in file order.
const std::vector<std::string>& sim_config_keys();

/// Sets one field from its text form. Throws ValidationError on an unknown
/// key or an unparsable value.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

/// Parses flat `key = value` text. Blank lines and `#` comments are ignored.
SimConfig parse_sim_config(std::string_view text, SimConfig base = {});

SimConfig load_sim_config(const std::filesystem::path& path, SimConfig base = {});

/// Renders every field as `key = value`, round-trippable by parse_sim_config.
std::string format_sim_config(const SimConfig& config);

}  // namespace levnet
