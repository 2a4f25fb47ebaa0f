#include "anywaresim/report.hpp"

#include <cstdio>

#include "anywaresim/config.hpp"

namespace anywaresim {

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_config_block(std::ostream& out, const ScenarioConfig& config) {
  for (const auto& [key, value] : config_fields(config)) out << "# " << key << " = " << value << '\n';
}

void write_hourly_csv(std::ostream& out, const std::vector<ArchRecords>& runs) {
  out << "arch,hour,mains_up,from_mains_wh,from_ups_battery_wh,from_laptop_batteries_wh,"
         "from_generator_wh,laptop_wh,desktop_wh,server_wh,switch_wh,ups_overhead_wh,"
         "ups_recharge_wh,laptop_recharge_wh,generator_ran,idle_laptops\n";
  for (const auto& run : runs) {
    for (const auto& r : run.records) {
      out << to_string(run.kind) << ',' << r.hour << ',' << (r.mains_up ? 1 : 0) << ','
          << format_number(r.from_mains) << ',' << format_number(r.from_ups_battery) << ','
          << format_number(r.from_laptop_batteries) << ',' << format_number(r.from_generator);
      for (auto e : r.device_energy) out << ',' << format_number(e);
      out << ',' << format_number(r.ups_overhead) << ',' << format_number(r.ups_recharge) << ','
          << format_number(r.laptop_recharge) << ',' << (r.generator_ran ? 1 : 0) << ','
          << r.idle_laptops << '\n';
    }
  }
}

namespace {

const char* kStatsColumns =
    "replications,horizon_hours,weighted_wh_mean,weighted_wh_ci95,electrical_wh_mean,"
    "mains_wh_mean,generator_wh_mean,ups_battery_wh_mean,laptop_battery_wh_mean,"
    "generator_hours_mean,generator_hours_ci95,fuel_mean,fuel_ci95,idle_laptop_hours_mean,"
    "outage_hours_mean,efficiency_vs_desktop,efficiency_vs_anyware";

void write_stats(std::ostream& out, const SummaryStats& s, double vs_desktop, double vs_anyware) {
  out << s.replications.size() << ',' << s.horizon << ',' << format_number(s.weighted.mean) << ','
      << format_number(s.weighted.half_width) << ',' << format_number(s.electrical.mean) << ','
      << format_number(s.from_mains.mean) << ',' << format_number(s.from_generator.mean) << ','
      << format_number(s.from_ups_battery.mean) << ','
      << format_number(s.from_laptop_batteries.mean) << ','
      << format_number(s.generator_hours.mean) << ',' << format_number(s.generator_hours.half_width)
      << ',' << format_number(s.fuel.mean) << ',' << format_number(s.fuel.half_width) << ','
      << format_number(s.idle_laptop_hours.mean) << ',' << format_number(s.outage_hours.mean) << ','
      << format_number(vs_desktop) << ',' << format_number(vs_anyware) << '\n';
}

std::vector<double> distinct_values(const std::vector<SweepRow>& rows) {
  std::vector<double> values;
  for (const auto& r : rows)
    if (values.empty() || values.back() != r.value) values.push_back(r.value);
  return values;
}

template <typename Cells>
void write_dat(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows,
               const std::vector<std::string>& column_suffixes, Cells cells) {
  out << "# " << to_string(spec.param);
  for (auto kind : spec.architectures)
    for (const auto& suffix : column_suffixes) out << ' ' << to_string(kind) << '_' << suffix;
  out << '\n';
  for (double value : distinct_values(rows)) {
    out << format_number(value);
    for (auto kind : spec.architectures)
      for (const auto& r : rows)
        if (r.value == value && r.kind == kind)
          for (double v : cells(r)) out << ' ' << format_number(v);
    out << '\n';
  }
}

}  // namespace

void write_summary_csv(std::ostream& out, const ScenarioConfig& config,
                       const std::vector<SummaryRow>& rows) {
  write_config_block(out, config);
  out << "arch," << kStatsColumns << '\n';
  for (const auto& row : rows) {
    out << to_string(row.stats.kind) << ',';
    write_stats(out, row.stats, row.efficiency_vs_desktop, row.efficiency_vs_anyware);
  }
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  write_config_block(out, spec.base);
  out << "# sweep.param = " << to_string(spec.param) << '\n';
  out << "param,value,arch," << kStatsColumns << '\n';
  for (const auto& row : rows) {
    out << to_string(spec.param) << ',' << format_number(row.value) << ',' << to_string(row.kind)
        << ',';
    write_stats(out, row.stats, row.efficiency_vs_desktop, row.efficiency_vs_anyware);
  }
}

void write_efficiency_dat(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  write_dat(out, spec, rows, {"eff_vs_desktop", "eff_vs_anyware"}, [](const SweepRow& r) {
    return std::vector<double>{r.efficiency_vs_desktop, r.efficiency_vs_anyware};
  });
}

void write_generator_hours_dat(std::ostream& out, const SweepSpec& spec,
                               const std::vector<SweepRow>& rows) {
  write_dat(out, spec, rows, {"gen_hours", "gen_hours_ci95"}, [](const SweepRow& r) {
    return std::vector<double>{r.stats.generator_hours.mean, r.stats.generator_hours.half_width};
  });
}

}  // namespace anywaresim
