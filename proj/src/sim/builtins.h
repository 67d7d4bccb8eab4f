#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sim/scenario.h"

namespace skypick::sim {

// Canned experiment setups, runnable by name from the CLI and the C API.
const std::vector<std::string>& builtin_names();

// Nullopt for unknown names.
std::optional<Scenario> builtin_scenario(const std::string& name);

}  // namespace skypick::sim
