// Hourly engine and the four architecture controllers.
//
// Each hour the controller decides, from the whole-interval battery test at
// the top of the hour, whether mains, batteries or the generator carry the
// load. Every HourlyRecord satisfies
//
//   mains + generator + UPS discharge + laptop discharge
//     == device consumption + UPS overhead + UPS recharge + laptop recharge.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "anywaresim/outage.hpp"
#include "anywaresim/powerfleet.hpp"
#include "anywaresim/scenario.hpp"

namespace anywaresim {

struct UpsUnit {
  UpsSpec spec;
  BatteryState battery;
};

struct GeneratorState {
  GeneratorSpec spec;
  long hours = 0;
  double fuel = 0.0;
};

struct ArchState {
  ArchKind kind = ArchKind::Desktop;
  FleetSpec fleet;
  std::optional<UpsUnit> ups;
  std::vector<BatteryState> laptop_batteries;  // AnywareDc only
  GeneratorState generator;
  LaptopDepletion laptop_depletion = LaptopDepletion::StartGenerator;
  bool generator_recharges_batteries = false;

  bool batteries_within_bounds() const;
};

/// Initial state for `kind` under `config`, all batteries full.
ArchState make_arch_state(ArchKind kind, const ScenarioConfig& config);

struct HourlyRecord {
  long hour = 0;
  bool mains_up = true;

  WattHours from_mains = 0.0;
  WattHours from_ups_battery = 0.0;
  WattHours from_laptop_batteries = 0.0;
  WattHours from_generator = 0.0;

  std::array<WattHours, kDeviceClassCount> device_energy{};  // indexed by DeviceClass
  WattHours ups_overhead = 0.0;
  WattHours ups_recharge = 0.0;
  WattHours laptop_recharge = 0.0;

  bool generator_ran = false;
  int idle_laptops = 0;

  WattHours supplied() const {
    return from_mains + from_generator + from_ups_battery + from_laptop_batteries;
  }
  WattHours device_total() const {
    WattHours total = 0.0;
    for (auto e : device_energy) total += e;
    return total;
  }
  WattHours consumed() const {
    return device_total() + ups_overhead + ups_recharge + laptop_recharge;
  }
};

/// Advances `state` by one hour in place and returns the hour's ledger.
HourlyRecord advance(ArchState& state, long hour, bool mains_up);

struct StepResult {
  HourlyRecord record;
  ArchState state;
};

StepResult step(ArchState state, long hour, bool mains_up);

/// Per-replication totals over a horizon.
struct ReplicationStats {
  long hours = 0;
  long outage_hours = 0;
  WattHours from_mains = 0.0;
  WattHours from_generator = 0.0;
  WattHours from_ups_battery = 0.0;
  WattHours from_laptop_batteries = 0.0;
  WattHours electrical = 0.0;  // mains + generator
  WattHours weighted = 0.0;    // mains + overhead_factor * generator
  long generator_hours = 0;
  double fuel = 0.0;
  long idle_laptop_hours = 0;

  void add(const HourlyRecord& record, const GeneratorSpec& generator);
};

using HourObserver = std::function<void(const HourlyRecord&, const ArchState&)>;

struct ReplicationResult {
  std::vector<HourlyRecord> records;  // empty unless requested
  ReplicationStats stats;
};

/// Runs hours 0..horizon-1 with a stream seeded by `seed`.
/// Throws SimulationError if a trace is shorter than the horizon.
ReplicationResult run_replication(ArchKind kind, const ScenarioConfig& config, std::uint64_t seed,
                                  bool keep_records = false, const HourObserver& observer = {});

}  // namespace anywaresim
