#include "anywaresim/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace anywaresim {

namespace {

// Backups beyond this are indistinguishable from "never runs out" for any
// probability short of 1 and keep the state space small.
constexpr long kBackupCap = 100000;

long whole_hours(WattHours capacity, Watts load) {
  if (load <= 0.0) return kBackupCap;
  return std::min(kBackupCap, static_cast<long>(std::floor(capacity / load + 1e-9)));
}

struct HourEnergy {
  double mains = 0.0;      // weighted Wh if the hour has mains
  double battery = 0.0;    // weighted Wh if carried by batteries (always 0)
  double generator = 0.0;  // weighted Wh if on generator
  int idle = 0;            // idle laptops if carried by batteries
};

// Energy of one hour entered in state s.
HourEnergy hour_energy(const OracleModel& m, long s) {
  double laptop_used = 0.0;
  int idle = 0;
  for (long b : m.laptop_backup) {
    laptop_used += static_cast<double>(std::min(s, b)) * m.laptop_draw;
    if (b <= s) ++idle;
  }
  const double ups_used = static_cast<double>(std::min(s, m.ups_backup)) * m.ups_carried;
  const double refill = ups_used + laptop_used;

  HourEnergy e;
  e.mains = m.device_load + m.ups_overhead + refill;
  e.generator = m.overhead_factor * (m.device_load + (m.refill_on_generator ? refill : 0.0));
  e.idle = idle;
  return e;
}

std::vector<double> stationary(const OracleModel& m) {
  const long T = m.trigger_backup;
  const double p = m.p;
  std::vector<double> pi(static_cast<std::size_t>(T) + 1, 0.0);
  if (m.refill_on_generator) {
    if (p >= 1.0) {
      std::fill(pi.begin(), pi.end(), 1.0 / static_cast<double>(T + 1));
    } else {
      const double norm = (1.0 - p) / (1.0 - std::pow(p, static_cast<double>(T + 1)));
      for (long s = 0; s <= T; ++s) pi[s] = std::pow(p, static_cast<double>(s)) * norm;
    }
  } else {
    for (long s = 0; s < T; ++s) pi[s] = (1.0 - p) * std::pow(p, static_cast<double>(s));
    pi[T] = std::pow(p, static_cast<double>(T));
  }
  return pi;
}

}  // namespace

OracleModel make_oracle_model(ArchKind kind, const ScenarioConfig& config) {
  if (!config.instant_recharge)
    throw OracleAssumptionError("oracle requires instant recharge (battery.instant_recharge = true)");
  const auto* bern = std::get_if<BernoulliOutage>(&config.outage);
  if (!bern) throw OracleAssumptionError("oracle requires a bernoulli outage policy");
  if (!(bern->p >= 0.0 && bern->p <= 1.0)) throw OracleAssumptionError("outage.p out of [0,1]");
  if (config.laptop_backup_hours < 0.0 || config.ups_backup_hours < 0.0)
    throw OracleAssumptionError("backup hours must be non-negative");

  OracleModel m;
  m.kind = kind;
  m.p = bern->p;
  m.overhead_factor = config.generator.overhead_factor;
  m.refill_on_generator = config.generator_recharges_batteries;
  m.depletion = config.laptop_depletion;

  // Fleet arithmetic written out independently of fleet_load().
  const int servers = config.servers.value_or(
      (config.users + config.users_per_server - 1) / config.users_per_server);
  const double core = servers * config.draws.server + config.switches * config.draws.sw;
  const double laptops = config.users * config.draws.laptop;
  const double desktops = config.users * config.draws.desktop;
  m.device_load = kind == ArchKind::Desktop ? desktops + config.switches * config.draws.sw
                                            : laptops + core;

  const double rated = config.ups_rated_load_w.value_or(laptops + core);
  const double ups_capacity = config.ups_backup_hours * rated;
  auto overhead_for = [&](double attached) {
    if (config.ups_overhead_mode == UpsOverheadMode::Fixed)
      return attached > 0.0 ? config.ups_fixed_overhead_w : 0.0;
    return config.ups_overhead_coefficient * attached;
  };

  switch (kind) {
    case ArchKind::Desktop:
    case ArchKind::Anyware:
      m.trigger_backup = 0;
      break;
    case ArchKind::AnywareUps: {
      m.ups_overhead = overhead_for(m.device_load);
      m.ups_carried = m.device_load + m.ups_overhead;
      m.ups_backup = whole_hours(ups_capacity, m.ups_carried);
      m.trigger_backup = m.ups_backup;
      break;
    }
    case ArchKind::AnywareDc: {
      m.ups_overhead = overhead_for(core);
      m.ups_carried = core + m.ups_overhead;
      m.ups_backup = whole_hours(ups_capacity, m.ups_carried);
      m.laptop_draw = config.draws.laptop;
      m.laptop_backup.assign(static_cast<std::size_t>(config.users), 0);
      for (int i = 0; i < config.users; ++i) {
        const double hours = static_cast<std::size_t>(i) < config.laptop_backup_overrides.size()
                                 ? config.laptop_backup_overrides[static_cast<std::size_t>(i)]
                                 : config.laptop_backup_hours;
        m.laptop_backup[static_cast<std::size_t>(i)] =
            whole_hours(hours * config.draws.laptop, config.draws.laptop);
      }
      long weakest = kBackupCap;
      for (long b : m.laptop_backup) weakest = std::min(weakest, b);
      m.trigger_backup = m.depletion == LaptopDepletion::StartGenerator
                             ? std::min(m.ups_backup, weakest)
                             : m.ups_backup;
      break;
    }
  }
  return m;
}

double generator_fraction(double p, long backup, bool refill_on_generator) {
  const double tail = std::pow(p, static_cast<double>(backup + 1));
  if (!refill_on_generator) return tail;
  if (p >= 1.0) return 1.0 / static_cast<double>(backup + 1);
  return tail * (1.0 - p) / (1.0 - tail);
}

double expected_generator_fraction(const OracleModel& m) {
  return generator_fraction(m.p, m.trigger_backup, m.refill_on_generator);
}

double expected_weighted_energy_per_hour(const OracleModel& m) {
  const auto pi = stationary(m);
  double total = 0.0;
  for (long s = 0; s <= m.trigger_backup; ++s) {
    const auto e = hour_energy(m, s);
    const double outage = s < m.trigger_backup ? e.battery : e.generator;
    total += pi[s] * ((1.0 - m.p) * e.mains + m.p * outage);
  }
  return total;
}

double expected_idle_laptops_per_hour(const OracleModel& m) {
  const auto pi = stationary(m);
  double total = 0.0;
  for (long s = 0; s < m.trigger_backup; ++s) total += pi[s] * m.p * hour_energy(m, s).idle;
  return total;
}

HorizonExpectation expected_over_horizon(const OracleModel& m, long horizon) {
  // The state never exceeds the number of elapsed hours.
  const long T = std::min(m.trigger_backup, std::max(0L, horizon));
  std::vector<HourEnergy> energy;
  for (long s = 0; s <= T; ++s) energy.push_back(hour_energy(m, s));

  HorizonExpectation out;
  std::vector<double> dist(static_cast<std::size_t>(T) + 1, 0.0), next(dist.size());
  dist[0] = 1.0;
  const double p = m.p;
  for (long t = 0; t < horizon; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (long s = 0; s <= T; ++s) {
      const double w = dist[s];
      if (w == 0.0) continue;
      const auto& e = energy[s];
      out.weighted_energy += w * (1.0 - p) * e.mains;
      next[0] += w * (1.0 - p);
      const bool on_battery = s < m.trigger_backup;
      if (on_battery) {
        out.idle_laptop_hours += w * p * e.idle;
        // T < trigger_backup only when the horizon is too short to reach it.
        next[std::min(s + 1, T)] += w * p;
      } else {
        out.weighted_energy += w * p * e.generator;
        out.generator_hours += w * p;
        next[m.refill_on_generator ? 0 : s] += w * p;
      }
    }
    std::swap(dist, next);
  }
  return out;
}

}  // namespace anywaresim
