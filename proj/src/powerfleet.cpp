#include "anywaresim/powerfleet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace anywaresim {

namespace {
// Relative slack for the whole-interval test so that a battery sized at an
// exact multiple of its load still covers the last hour after repeated
// floating-point subtraction.
constexpr double kCoverSlack = 1e-9;
}  // namespace

std::string_view to_string(DeviceClass c) {
  switch (c) {
    case DeviceClass::Laptop: return "laptop";
    case DeviceClass::Desktop: return "desktop";
    case DeviceClass::Server: return "server";
    case DeviceClass::Switch: return "switch";
  }
  return "unknown";
}

int FleetSpec::count(DeviceClass c) const {
  int n = 0;
  for (const auto& spec : classes)
    if (spec.device == c) n += spec.count;
  return n;
}

Watts FleetSpec::unit_draw(DeviceClass c) const {
  for (const auto& spec : classes)
    if (spec.device == c) return spec.unit_draw;
  return 0.0;
}

DeviceSet FleetSpec::present() const {
  DeviceSet s;
  for (const auto& spec : classes)
    if (spec.count > 0) s = s | DeviceSet{spec.device};
  return s;
}

int servers_for_users(int users, int users_per_server) {
  if (users <= 0 || users_per_server <= 0) return 0;
  return (users + users_per_server - 1) / users_per_server;
}

FleetSpec make_anyware_fleet(int users, const FleetDraws& draws, int switches,
                             int users_per_server) {
  FleetSpec fleet;
  fleet.users = users;
  fleet.classes = {
      {DeviceClass::Laptop, draws.laptop, users},
      {DeviceClass::Server, draws.server, servers_for_users(users, users_per_server)},
      {DeviceClass::Switch, draws.sw, switches},
  };
  return fleet;
}

FleetSpec make_desktop_fleet(int users, const FleetDraws& draws, int switches) {
  FleetSpec fleet;
  fleet.users = users;
  fleet.classes = {
      {DeviceClass::Desktop, draws.desktop, users},
      {DeviceClass::Switch, draws.sw, switches},
  };
  return fleet;
}

Watts fleet_load(const FleetSpec& fleet, DeviceSet subset) {
  Watts total = 0.0;
  for (const auto& spec : fleet.classes)
    if (subset.contains(spec.device)) total += spec.unit_draw * spec.count;
  return total;
}

BatterySpec make_battery(Hours backup_hours, Watts rated_load, Watts charge_power) {
  return {backup_hours * rated_load, charge_power, backup_hours};
}

bool battery_can_cover(const BatteryState& state, Watts load, Hours dt) {
  const WattHours need = load * dt;
  return state.charge >= need * (1.0 - kCoverSlack);
}

ServeResult battery_serve(const BatteryState& state, Watts load, Hours dt) {
  if (!battery_can_cover(state, load, dt)) return {0.0, state, false};
  const WattHours need = load * dt;
  BatteryState next = state;
  next.charge = std::max(0.0, state.charge - need);
  return {need, next, true};
}

RechargeResult battery_recharge(const BatteryState& state, Hours dt) {
  const WattHours headroom = std::max(0.0, state.spec.capacity - state.charge);
  const WattHours drawn = std::min(state.spec.charge_power * dt, headroom);
  BatteryState next = state;
  // Land exactly on capacity when the headroom is filled.
  next.charge = drawn == headroom ? state.spec.capacity : state.charge + drawn;
  return {drawn, next};
}

long whole_backup_hours(WattHours capacity, Watts load) {
  if (load <= 0.0) return capacity >= 0.0 ? std::numeric_limits<long>::max() : 0;
  return static_cast<long>(std::floor(capacity / load + kCoverSlack));
}

Watts ups_overhead(const UpsSpec& spec, Watts attached_load) {
  if (spec.mode == UpsOverheadMode::Fixed) return attached_load > 0.0 ? spec.fixed_overhead : 0.0;
  return spec.overhead_coefficient * attached_load;
}

}  // namespace anywaresim
