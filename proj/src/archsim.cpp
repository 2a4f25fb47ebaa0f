#include "anywaresim/archsim.hpp"

#include <string>

namespace anywaresim {

namespace {

constexpr Hours kHour = 1.0;

std::size_t idx(DeviceClass c) { return static_cast<std::size_t>(c); }

void charge_devices(HourlyRecord& rec, const FleetSpec& fleet, DeviceSet subset) {
  for (const auto& spec : fleet.classes)
    if (subset.contains(spec.device)) rec.device_energy[idx(spec.device)] += spec.unit_draw * spec.count * kHour;
}

WattHours recharge_ups(ArchState& s) {
  auto r = battery_recharge(s.ups->battery, kHour);
  s.ups->battery = r.state;
  return r.drawn;
}

WattHours recharge_laptops(ArchState& s) {
  WattHours drawn = 0.0;
  for (auto& b : s.laptop_batteries) {
    auto r = battery_recharge(b, kHour);
    b = r.state;
    drawn += r.drawn;
  }
  return drawn;
}

void run_generator(ArchState& s, HourlyRecord& rec) {
  rec.generator_ran = true;
  s.generator.hours += 1;
  s.generator.fuel += s.generator.spec.fuel_rate * kHour;
}

// Desktop and unmodified Anyware: mains or generator, nothing stored.
void advance_direct(ArchState& s, HourlyRecord& rec) {
  charge_devices(rec, s.fleet, DeviceSet::all());
  const WattHours load = rec.device_total();
  if (rec.mains_up) {
    rec.from_mains = load;
  } else {
    rec.from_generator = load;
    run_generator(s, rec);
  }
}

// The UPS carries the whole fleet.
void advance_ups(ArchState& s, HourlyRecord& rec) {
  charge_devices(rec, s.fleet, DeviceSet::all());
  const Watts attached = rec.device_total();
  const Watts overhead = ups_overhead(s.ups->spec, attached);

  if (rec.mains_up) {
    rec.ups_overhead = overhead * kHour;
    rec.ups_recharge = recharge_ups(s);
    rec.from_mains = attached * kHour + rec.ups_overhead + rec.ups_recharge;
    return;
  }
  auto served = battery_serve(s.ups->battery, attached + overhead, kHour);
  if (served.covered) {
    s.ups->battery = served.state;
    rec.ups_overhead = overhead * kHour;
    rec.from_ups_battery = served.served;
    return;
  }
  // Generator bypasses the UPS, so no overhead this hour.
  run_generator(s, rec);
  if (s.generator_recharges_batteries) rec.ups_recharge = recharge_ups(s);
  rec.from_generator = attached * kHour + rec.ups_recharge;
}

// The UPS carries servers and switches; laptops run on their own batteries.
void advance_dc(ArchState& s, HourlyRecord& rec) {
  const DeviceSet core{DeviceClass::Server, DeviceClass::Switch};
  const Watts core_load = fleet_load(s.fleet, core);
  const Watts overhead = ups_overhead(s.ups->spec, core_load);
  const Watts laptop_draw = s.fleet.unit_draw(DeviceClass::Laptop);
  const int laptops = static_cast<int>(s.laptop_batteries.size());

  if (rec.mains_up) {
    charge_devices(rec, s.fleet, DeviceSet::all());
    rec.ups_overhead = overhead * kHour;
    rec.ups_recharge = recharge_ups(s);
    rec.laptop_recharge = recharge_laptops(s);
    rec.from_mains = rec.device_total() + rec.ups_overhead + rec.ups_recharge + rec.laptop_recharge;
    return;
  }

  const bool ups_ok = battery_can_cover(s.ups->battery, core_load + overhead, kHour);
  bool laptops_ok = true;
  for (const auto& b : s.laptop_batteries)
    if (!battery_can_cover(b, laptop_draw, kHour)) {
      laptops_ok = false;
      break;
    }
  const bool need_generator =
      !ups_ok || (s.laptop_depletion == LaptopDepletion::StartGenerator && !laptops_ok);

  if (need_generator) {
    charge_devices(rec, s.fleet, DeviceSet::all());
    run_generator(s, rec);
    if (s.generator_recharges_batteries) {
      rec.ups_recharge = recharge_ups(s);
      rec.laptop_recharge = recharge_laptops(s);
    }
    rec.from_generator = rec.device_total() + rec.ups_recharge + rec.laptop_recharge;
    return;
  }

  charge_devices(rec, s.fleet, core);
  auto served = battery_serve(s.ups->battery, core_load + overhead, kHour);
  s.ups->battery = served.state;
  rec.ups_overhead = overhead * kHour;
  rec.from_ups_battery = served.served;

  int active = 0;
  for (auto& b : s.laptop_batteries) {
    auto r = battery_serve(b, laptop_draw, kHour);
    if (r.covered) {
      b = r.state;
      rec.from_laptop_batteries += r.served;
      ++active;
    }
  }
  rec.idle_laptops = laptops - active;
  rec.device_energy[idx(DeviceClass::Laptop)] = active * laptop_draw * kHour;
}

}  // namespace

bool ArchState::batteries_within_bounds() const {
  if (ups && !ups->battery.within_bounds()) return false;
  for (const auto& b : laptop_batteries)
    if (!b.within_bounds()) return false;
  return true;
}

ArchState make_arch_state(ArchKind kind, const ScenarioConfig& config) {
  ArchState s;
  s.kind = kind;
  s.fleet = fleet_for(kind, config);
  s.generator.spec = config.generator;
  s.laptop_depletion = config.laptop_depletion;
  s.generator_recharges_batteries = config.generator_recharges_batteries;
  if (kind == ArchKind::AnywareUps || kind == ArchKind::AnywareDc) {
    const UpsSpec spec = ups_spec(config);
    s.ups = UpsUnit{spec, BatteryState::full(spec.battery)};
  }
  if (kind == ArchKind::AnywareDc) {
    for (const auto& spec : laptop_battery_specs(config))
      s.laptop_batteries.push_back(BatteryState::full(spec));
  }
  return s;
}

HourlyRecord advance(ArchState& state, long hour, bool mains_up) {
  HourlyRecord rec;
  rec.hour = hour;
  rec.mains_up = mains_up;
  switch (state.kind) {
    case ArchKind::Desktop:
    case ArchKind::Anyware: advance_direct(state, rec); break;
    case ArchKind::AnywareUps: advance_ups(state, rec); break;
    case ArchKind::AnywareDc: advance_dc(state, rec); break;
  }
  return rec;
}

StepResult step(ArchState state, long hour, bool mains_up) {
  HourlyRecord rec = advance(state, hour, mains_up);
  return {rec, std::move(state)};
}

void ReplicationStats::add(const HourlyRecord& r, const GeneratorSpec& generator) {
  ++hours;
  if (!r.mains_up) ++outage_hours;
  from_mains += r.from_mains;
  from_generator += r.from_generator;
  from_ups_battery += r.from_ups_battery;
  from_laptop_batteries += r.from_laptop_batteries;
  electrical += r.from_mains + r.from_generator;
  weighted += r.from_mains + generator.overhead_factor * r.from_generator;
  if (r.generator_ran) {
    ++generator_hours;
    fuel += generator.fuel_rate;
  }
  idle_laptop_hours += r.idle_laptops;
}

ReplicationResult run_replication(ArchKind kind, const ScenarioConfig& config, std::uint64_t seed,
                                  bool keep_records, const HourObserver& observer) {
  if (config.horizon_hours < 1) throw SimulationError("horizon must be at least 1 hour");
  if (const auto* t = std::get_if<TraceOutage>(&config.outage);
      t && t->bits.size() < static_cast<std::size_t>(config.horizon_hours))
    throw SimulationError("outage trace has " + std::to_string(t->bits.size()) +
                          " hours, shorter than the " + std::to_string(config.horizon_hours) +
                          " h horizon");

  ReplicationResult result;
  if (keep_records) result.records.reserve(static_cast<std::size_t>(config.horizon_hours));
  ArchState state = make_arch_state(kind, config);
  RandomStream rng(seed);
  for (long hour = 0; hour < config.horizon_hours; ++hour) {
    const bool up = mains_available(config.outage, hour, rng);
    HourlyRecord rec = advance(state, hour, up);
    result.stats.add(rec, state.generator.spec);
    if (observer) observer(rec, state);
    if (keep_records) result.records.push_back(rec);
  }
  return result;
}

}  // namespace anywaresim
