#include "anywaresim/scenario.hpp"

#include <cmath>
#include <limits>

namespace anywaresim {

std::string_view to_string(ArchKind kind) {
  switch (kind) {
    case ArchKind::Desktop: return "desktop";
    case ArchKind::Anyware: return "anyware";
    case ArchKind::AnywareUps: return "anyware_ups";
    case ArchKind::AnywareDc: return "anyware_dc";
  }
  return "unknown";
}

std::optional<ArchKind> parse_arch(std::string_view name) {
  for (auto kind : kAllArchKinds)
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

std::string_view to_string(LaptopDepletion policy) {
  return policy == LaptopDepletion::StartGenerator ? "start_generator" : "idle_wait";
}

std::optional<LaptopDepletion> parse_depletion(std::string_view name) {
  if (name == "start_generator") return LaptopDepletion::StartGenerator;
  if (name == "idle_wait") return LaptopDepletion::IdleWait;
  return std::nullopt;
}

std::string_view to_string(UpsOverheadMode mode) {
  return mode == UpsOverheadMode::Proportional ? "proportional" : "fixed";
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void validate(const ScenarioConfig& c) {
  require(!c.architectures.empty(), "architectures must not be empty");
  require(c.users >= 1, "users must be >= 1");
  require(finite_nonneg(c.draws.laptop), "fleet.laptop_w must be >= 0");
  require(finite_nonneg(c.draws.desktop), "fleet.desktop_w must be >= 0");
  require(finite_nonneg(c.draws.server), "fleet.server_w must be >= 0");
  require(finite_nonneg(c.draws.sw), "fleet.switch_w must be >= 0");
  require(c.switches >= 0, "fleet.switches must be >= 0");
  require(c.users_per_server >= 1, "fleet.users_per_server must be >= 1");
  require(!c.servers || *c.servers >= 0, "fleet.servers must be >= 0");

  require(finite_nonneg(c.laptop_backup_hours), "battery.laptop_backup_hours must be >= 0");
  require(!c.laptop_charge_w || finite_nonneg(*c.laptop_charge_w),
          "battery.laptop_charge_w must be >= 0");
  require(c.laptop_backup_overrides.size() <= static_cast<std::size_t>(c.users),
          "battery.laptop_backup_overrides has more entries than users");
  for (auto h : c.laptop_backup_overrides)
    require(finite_nonneg(h), "battery.laptop_backup_overrides entries must be >= 0");
  require(finite_nonneg(c.ups_backup_hours), "battery.ups_backup_hours must be >= 0");
  require(!c.ups_rated_load_w || finite_nonneg(*c.ups_rated_load_w),
          "battery.ups_rated_load_w must be >= 0");
  require(!c.ups_charge_w || finite_nonneg(*c.ups_charge_w), "battery.ups_charge_w must be >= 0");

  require(finite_nonneg(c.ups_overhead_coefficient), "ups.overhead_coefficient must be >= 0");
  require(finite_nonneg(c.ups_fixed_overhead_w), "ups.overhead_fixed_w must be >= 0");

  require(std::isfinite(c.generator.overhead_factor) && c.generator.overhead_factor >= 1.0,
          "generator.overhead_factor must be >= 1");
  require(finite_nonneg(c.generator.fuel_rate), "generator.fuel_rate must be >= 0");

  validate(c.outage);
  require(c.horizon_hours >= 1, "horizon_hours must be >= 1");
  require(c.replications >= 1, "replications must be >= 1");
  if (const auto* t = std::get_if<TraceOutage>(&c.outage))
    require(t->bits.size() >= static_cast<std::size_t>(c.horizon_hours),
            "outage trace has " + std::to_string(t->bits.size()) +
                " hours, shorter than horizon_hours " + std::to_string(c.horizon_hours));
}

FleetSpec anyware_fleet(const ScenarioConfig& c) {
  FleetSpec fleet = make_anyware_fleet(c.users, c.draws, c.switches, c.users_per_server);
  if (c.servers)
    for (auto& spec : fleet.classes)
      if (spec.device == DeviceClass::Server) spec.count = *c.servers;
  return fleet;
}

FleetSpec desktop_fleet(const ScenarioConfig& c) {
  return make_desktop_fleet(c.users, c.draws, c.switches);
}

FleetSpec fleet_for(ArchKind kind, const ScenarioConfig& c) {
  return kind == ArchKind::Desktop ? desktop_fleet(c) : anyware_fleet(c);
}

Watts ups_rated_load(const ScenarioConfig& c) {
  return c.ups_rated_load_w.value_or(fleet_load(anyware_fleet(c), DeviceSet::all()));
}

namespace {
constexpr double kInstant = std::numeric_limits<double>::infinity();
}

UpsSpec ups_spec(const ScenarioConfig& c) {
  UpsSpec ups;
  ups.mode = c.ups_overhead_mode;
  ups.overhead_coefficient = c.ups_overhead_coefficient;
  ups.fixed_overhead = c.ups_fixed_overhead_w;
  const Watts rated = ups_rated_load(c);
  const WattHours capacity = c.ups_backup_hours * rated;
  const Watts charge = c.instant_recharge ? kInstant : c.ups_charge_w.value_or(capacity / 3.0);
  ups.battery = make_battery(c.ups_backup_hours, rated, charge);
  return ups;
}

std::vector<BatterySpec> laptop_battery_specs(const ScenarioConfig& c) {
  const Watts draw = c.draws.laptop;
  const Watts charge = c.instant_recharge ? kInstant : c.laptop_charge_w.value_or(draw);
  std::vector<BatterySpec> specs(static_cast<std::size_t>(c.users),
                                 make_battery(c.laptop_backup_hours, draw, charge));
  if (c.laptop_backup_overrides.size() > specs.size())
    throw ConfigError("battery.laptop_backup_overrides has more entries than users");
  for (std::size_t i = 0; i < c.laptop_backup_overrides.size(); ++i)
    specs[i] = make_battery(c.laptop_backup_overrides[i], draw, charge);
  return specs;
}

Watts ups_attached_load(ArchKind kind, const ScenarioConfig& c) {
  const FleetSpec fleet = anyware_fleet(c);
  switch (kind) {
    case ArchKind::AnywareUps: return fleet_load(fleet, DeviceSet::all());
    case ArchKind::AnywareDc: return fleet_load(fleet, {DeviceClass::Server, DeviceClass::Switch});
    default: return 0.0;
  }
}

}  // namespace anywaresim
