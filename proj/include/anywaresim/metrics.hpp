// Monte Carlo aggregation, efficiency against a baseline, parameter sweeps.
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "anywaresim/archsim.hpp"
#include "anywaresim/scenario.hpp"

namespace anywaresim {

/// Mean across replications with its standard error and the
/// normal-approximation 95% confidence half-width.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double half_width = 0.0;
};

Estimate estimate(const std::vector<double>& samples);

struct SummaryStats {
  ArchKind kind = ArchKind::Desktop;
  long horizon = 0;
  GeneratorSpec generator;
  std::vector<ReplicationStats> replications;

  Estimate from_mains;
  Estimate from_generator;
  Estimate from_ups_battery;
  Estimate from_laptop_batteries;
  Estimate electrical;
  Estimate weighted;
  Estimate generator_hours;
  Estimate fuel;
  Estimate idle_laptop_hours;
  Estimate outage_hours;
};

/// Builds the estimates from per-replication totals. Order-independent up to
/// floating-point summation order, which is fixed by sorting the samples.
SummaryStats summarize(ArchKind kind, const ScenarioConfig& config,
                       std::vector<ReplicationStats> replications);

/// Replications base_seed .. base_seed + R - 1, run on up to `threads` workers
/// (0 = hardware concurrency).
SummaryStats run_monte_carlo(ArchKind kind, const ScenarioConfig& config, unsigned threads = 0);

/// 1 - weighted(arch) / weighted(baseline). Throws SimulationError on a
/// zero baseline.
double efficiency(const SummaryStats& arch, const SummaryStats& baseline);

enum class SweepParam { OutageP, LaptopBackupHours, UpsBackupHours };

std::string_view to_string(SweepParam param);
std::optional<SweepParam> parse_sweep_param(std::string_view name);

/// Copy of `base` with the swept parameter set to `value`.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParam param, double value);

struct SweepSpec {
  SweepParam param = SweepParam::OutageP;
  std::vector<double> values;
  std::vector<ArchKind> architectures;
  ScenarioConfig base;
};

void validate(const SweepSpec& spec);

struct SweepRow {
  double value = 0.0;
  ArchKind kind = ArchKind::Desktop;
  SummaryStats stats;
  double efficiency_vs_desktop = 0.0;
  double efficiency_vs_anyware = 0.0;
};

/// Rows in (value, architecture) order. Desktop and Anyware baselines are
/// run once per value with the same seeds as every other architecture.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);

}  // namespace anywaresim
