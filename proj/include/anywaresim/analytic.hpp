// Closed-form expectations for i.i.d. Bernoulli outages with instant
// recharge. Used to validate the hourly engine; it never calls into it.
//
// Under instant recharge the only state that matters is s, the number of
// consecutive battery-carried outage hours since batteries were last full.
// An outage hour with s < T is carried by batteries; with s >= T the
// generator runs, where T is the whole-hour backup that triggers it:
//
//   Desktop, Anyware          T = 0
//   AnywareUPS                T = floor(C_ups / (fleet + overhead))
//   AnywareDC, StartGenerator T = min(B_ups, min_i B_laptop_i)
//   AnywareDC, IdleWait       T = B_ups, with B_ups = floor(C_ups / (core + overhead))
//
// Mains hours refill everything (s -> 0). Generator hours refill only when
// the generator recharges batteries; otherwise s stays at T until mains
// returns. Stationary generator fractions:
//
//   no refill on generator:  f = p^(T+1)
//   refill on generator:     f = p^(T+1) (1 - p) / (1 - p^(T+1))   (1/(T+1) at p = 1)
#pragma once

#include <vector>

#include "anywaresim/outage.hpp"
#include "anywaresim/scenario.hpp"

namespace anywaresim {

class OracleAssumptionError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Everything the oracle needs, derived from a scenario.
struct OracleModel {
  ArchKind kind = ArchKind::Desktop;
  double p = 0.0;
  double overhead_factor = 1.5;
  bool refill_on_generator = false;
  LaptopDepletion depletion = LaptopDepletion::StartGenerator;

  Watts device_load = 0.0;       // whole fleet
  Watts ups_carried = 0.0;       // attached load + overhead while on UPS battery
  Watts ups_overhead = 0.0;
  Watts laptop_draw = 0.0;
  long ups_backup = 0;                // whole hours
  std::vector<long> laptop_backup;    // whole hours per laptop (AnywareDC)
  long trigger_backup = 0;            // T
};

/// Refuses unless the scenario uses instant recharge and a Bernoulli policy.
OracleModel make_oracle_model(ArchKind kind, const ScenarioConfig& config);

/// Stationary fraction of hours on generator for whole-hour backup T.
double generator_fraction(double p, long backup, bool refill_on_generator);

double expected_generator_fraction(const OracleModel& model);
/// Mains Wh + overhead_factor * generator Wh, per hour, in steady state.
double expected_weighted_energy_per_hour(const OracleModel& model);
double expected_idle_laptops_per_hour(const OracleModel& model);

/// Exact expectations over a finite horizon starting with full batteries.
struct HorizonExpectation {
  double generator_hours = 0.0;
  double weighted_energy = 0.0;
  double idle_laptop_hours = 0.0;
};

HorizonExpectation expected_over_horizon(const OracleModel& model, long horizon);

}  // namespace anywaresim
