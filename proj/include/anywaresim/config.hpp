// Scenario files: TOML, every key optional, unknown keys rejected.
//
//   architectures = ["desktop", "anyware", "anyware_ups", "anyware_dc"]
//   users = 25
//   horizon_hours = 720
//   replications = 1000
//   base_seed = 42
//   laptop_depletion_policy = "start_generator"   # or "idle_wait"
//
//   [fleet]      laptop_w, desktop_w, server_w, switch_w, switches,
//                users_per_server, servers
//   [battery]    laptop_backup_hours, laptop_charge_w, laptop_backup_overrides,
//                ups_backup_hours, ups_rated_load_w, ups_charge_w, instant_recharge
//   [ups]        overhead_mode ("proportional" | "fixed"), overhead_coefficient,
//                overhead_fixed_w
//   [generator]  overhead_factor, fuel_rate, recharges_batteries
//   [outage]     policy ("bernoulli" | "scheduled" | "trace"), p,
//                windows = [[start, end], ...], trace = "path"
//
// A relative trace path is resolved against the config file's directory.
#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "anywaresim/scenario.hpp"

namespace anywaresim {

/// Throws ConfigError with the offending key (and line, when known).
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& text,
                            const std::filesystem::path& base_dir = std::filesystem::path("."));

/// Every config field as (dotted key, value text), in schema order.
std::vector<std::pair<std::string, std::string>> config_fields(const ScenarioConfig& config);

}  // namespace anywaresim
