// Fully-resolved scenario parameters. Defaults are the small-office setup:
// 25 users, 24/165/270/6 W draws, a 96 W UPS overhead at full Anyware load,
// 3 h laptop and UPS backups.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anywaresim/outage.hpp"
#include "anywaresim/powerfleet.hpp"

namespace anywaresim {

enum class ArchKind { Desktop, Anyware, AnywareUps, AnywareDc };

inline constexpr ArchKind kAllArchKinds[] = {ArchKind::Desktop, ArchKind::Anyware,
                                             ArchKind::AnywareUps, ArchKind::AnywareDc};

std::string_view to_string(ArchKind kind);
/// Accepts desktop, anyware, anyware_ups, anyware_dc.
std::optional<ArchKind> parse_arch(std::string_view name);

/// What AnywareDC does when a laptop battery cannot cover the next hour.
enum class LaptopDepletion { StartGenerator, IdleWait };

std::string_view to_string(LaptopDepletion policy);
std::optional<LaptopDepletion> parse_depletion(std::string_view name);

std::string_view to_string(UpsOverheadMode mode);

struct ScenarioConfig {
  std::vector<ArchKind> architectures{std::begin(kAllArchKinds), std::end(kAllArchKinds)};

  int users = kDefaultUsers;
  FleetDraws draws;
  int switches = 1;
  int users_per_server = kUsersPerServer;
  std::optional<int> servers;  // overrides ceil(users / users_per_server)

  Hours laptop_backup_hours = kDefaultBackupHours;
  std::optional<Watts> laptop_charge_w;         // default: laptop draw
  std::vector<Hours> laptop_backup_overrides;   // per-laptop, index-aligned
  Hours ups_backup_hours = kDefaultBackupHours;
  std::optional<Watts> ups_rated_load_w;        // default: Anyware fleet load
  std::optional<Watts> ups_charge_w;            // default: capacity / 3
  bool instant_recharge = false;

  UpsOverheadMode ups_overhead_mode = UpsOverheadMode::Proportional;
  double ups_overhead_coefficient = kUpsOverheadAnchor / 876.0;
  Watts ups_fixed_overhead_w = kUpsOverheadAnchor;

  GeneratorSpec generator;
  bool generator_recharges_batteries = false;
  LaptopDepletion laptop_depletion = LaptopDepletion::StartGenerator;

  OutagePolicy outage = BernoulliOutage{0.5};
  std::string trace_path;  // informational; the trace is already loaded into `outage`

  long horizon_hours = 720;
  int replications = 1000;
  std::uint64_t base_seed = 42;
};

/// Throws ConfigError naming the first offending field.
void validate(const ScenarioConfig& config);

FleetSpec anyware_fleet(const ScenarioConfig& config);
FleetSpec desktop_fleet(const ScenarioConfig& config);
FleetSpec fleet_for(ArchKind kind, const ScenarioConfig& config);

Watts ups_rated_load(const ScenarioConfig& config);
UpsSpec ups_spec(const ScenarioConfig& config);
std::vector<BatterySpec> laptop_battery_specs(const ScenarioConfig& config);

/// Load the UPS carries in `kind` (0 for architectures without a UPS).
Watts ups_attached_load(ArchKind kind, const ScenarioConfig& config);

}  // namespace anywaresim
