// CSV and gnuplot .dat emission. Numbers are written with 6 significant
// digits; every file starts with a "# key = value" block of the full config.
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "anywaresim/archsim.hpp"
#include "anywaresim/metrics.hpp"
#include "anywaresim/scenario.hpp"

namespace anywaresim {

/// printf("%.6g"), with -0 written as 0.
std::string format_number(double value);

void write_config_block(std::ostream& out, const ScenarioConfig& config);

struct ArchRecords {
  ArchKind kind;
  std::vector<HourlyRecord> records;
};

void write_hourly_csv(std::ostream& out, const std::vector<ArchRecords>& runs);

struct SummaryRow {
  SummaryStats stats;
  double efficiency_vs_desktop = 0.0;
  double efficiency_vs_anyware = 0.0;
};

void write_summary_csv(std::ostream& out, const ScenarioConfig& config,
                       const std::vector<SummaryRow>& rows);

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Efficiency vs. desktop and vs. anyware per architecture, one line per value.
void write_efficiency_dat(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);
/// Mean generator hours and 95% half-width per architecture.
void write_generator_hours_dat(std::ostream& out, const SweepSpec& spec,
                               const std::vector<SweepRow>& rows);

}  // namespace anywaresim
