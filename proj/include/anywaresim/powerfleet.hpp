// Device fleets, batteries, UPS and generator: the value types and the pure
// energy arithmetic the hourly engine is built from.
//
// Units: power in watts, energy in watt-hours, time in hours.
#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace anywaresim {

using Watts = double;
using WattHours = double;
using Hours = double;

enum class DeviceClass { Laptop = 0, Desktop = 1, Server = 2, Switch = 3 };

inline constexpr std::size_t kDeviceClassCount = 4;
inline constexpr std::array<DeviceClass, kDeviceClassCount> kAllDeviceClasses = {
    DeviceClass::Laptop, DeviceClass::Desktop, DeviceClass::Server, DeviceClass::Switch};

std::string_view to_string(DeviceClass c);

// Flat per-unit draws at full CPU load for a small office.
inline constexpr Watts kLaptopDraw = 24.0;
inline constexpr Watts kDesktopDraw = 165.0;
inline constexpr Watts kServerDraw = 270.0;
inline constexpr Watts kSwitchDraw = 6.0;
inline constexpr Watts kUpsOverheadAnchor = 96.0;
inline constexpr int kDefaultUsers = 25;
inline constexpr int kUsersPerServer = 25;
inline constexpr double kDefaultBackupHours = 3.0;

struct DeviceClassSpec {
  DeviceClass device = DeviceClass::Laptop;
  Watts unit_draw = 0.0;
  int count = 0;
};

/// A set of device classes, as a bitmask over DeviceClass.
class DeviceSet {
 public:
  constexpr DeviceSet() = default;
  constexpr DeviceSet(std::initializer_list<DeviceClass> classes) {
    for (auto c : classes) bits_ |= bit(c);
  }
  static constexpr DeviceSet all() {
    return {DeviceClass::Laptop, DeviceClass::Desktop, DeviceClass::Server, DeviceClass::Switch};
  }
  constexpr bool contains(DeviceClass c) const { return (bits_ & bit(c)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr DeviceSet operator|(DeviceSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr DeviceSet operator&(DeviceSet o) const { return from_bits(bits_ & o.bits_); }

 private:
  static constexpr unsigned bit(DeviceClass c) { return 1u << static_cast<unsigned>(c); }
  static constexpr DeviceSet from_bits(unsigned b) {
    DeviceSet s;
    s.bits_ = b;
    return s;
  }
  unsigned bits_ = 0;
};

struct FleetSpec {
  std::vector<DeviceClassSpec> classes;
  int users = kDefaultUsers;

  /// Count of devices in class `c` (0 when absent).
  int count(DeviceClass c) const;
  Watts unit_draw(DeviceClass c) const;
  DeviceSet present() const;
};

struct FleetDraws {
  Watts laptop = kLaptopDraw;
  Watts desktop = kDesktopDraw;
  Watts server = kServerDraw;
  Watts sw = kSwitchDraw;
};

int servers_for_users(int users, int users_per_server = kUsersPerServer);

/// Laptops for every user, ceil(users / users_per_server) servers, and switches.
FleetSpec make_anyware_fleet(int users, const FleetDraws& draws = {}, int switches = 1,
                             int users_per_server = kUsersPerServer);
/// Desktops for every user plus switches; no server cluster.
FleetSpec make_desktop_fleet(int users, const FleetDraws& draws = {}, int switches = 1);

/// Sum of unit_draw * count over the classes in `subset`.
Watts fleet_load(const FleetSpec& fleet, DeviceSet subset);

struct BatterySpec {
  WattHours capacity = 0.0;
  Watts charge_power = 0.0;
  Hours backup_hours = 0.0;
};

/// Capacity sized as `backup_hours` at `rated_load`.
BatterySpec make_battery(Hours backup_hours, Watts rated_load, Watts charge_power);

struct BatteryState {
  BatterySpec spec;
  WattHours charge = 0.0;

  static BatteryState full(const BatterySpec& spec) { return {spec, spec.capacity}; }
  bool within_bounds() const { return charge >= 0.0 && charge <= spec.capacity; }
};

struct ServeResult {
  WattHours served = 0.0;
  BatteryState state;
  bool covered = false;
};

struct RechargeResult {
  WattHours drawn = 0.0;
  BatteryState state;
};

/// True when the battery can carry `load` for the whole of `dt`.
bool battery_can_cover(const BatteryState& state, Watts load, Hours dt);

/// Whole-interval discharge: serve all of load*dt or nothing.
ServeResult battery_serve(const BatteryState& state, Watts load, Hours dt);

/// Lossless recharge at charge_power, clamped to the remaining headroom.
RechargeResult battery_recharge(const BatteryState& state, Hours dt);

/// Whole hours the battery can carry `load` from full charge.
long whole_backup_hours(WattHours capacity, Watts load);

enum class UpsOverheadMode { Proportional, Fixed };

struct UpsSpec {
  UpsOverheadMode mode = UpsOverheadMode::Proportional;
  double overhead_coefficient = kUpsOverheadAnchor / 876.0;
  Watts fixed_overhead = kUpsOverheadAnchor;
  BatterySpec battery;
};

/// Extra draw of the UPS while it carries `attached_load`.
Watts ups_overhead(const UpsSpec& spec, Watts attached_load);

struct GeneratorSpec {
  double overhead_factor = 1.5;
  double fuel_rate = 1.0;
};

}  // namespace anywaresim
