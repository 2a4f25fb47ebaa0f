#include "anywaresim/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "anywaresim/analytic.hpp"
#include "anywaresim/config.hpp"
#include "anywaresim/metrics.hpp"
#include "anywaresim/report.hpp"

namespace anywaresim {

namespace fs = std::filesystem;

namespace {

double parse_double(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size()) throw ConfigError("not a number: '" + token + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

// Removes accumulated binary noise such as 0.30000000000000004.
double tidy(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::stod(buf);
}

std::vector<double> progression(double start, double step, double end) {
  if (step == 0.0 || (end - start) / step < 0.0)
    throw ConfigError("value range step does not move from start toward end");
  std::vector<double> values;
  const double span = (end - start) / step;
  const long n = static_cast<long>(std::floor(span + 1e-9));
  for (long k = 0; k <= n; ++k) values.push_back(tidy(start + static_cast<double>(k) * step));
  return values;
}

std::vector<ArchKind> parse_arch_list(const std::string& text) {
  std::vector<ArchKind> kinds;
  for (const auto& name : split(text, ',')) {
    auto kind = parse_arch(name);
    if (!kind) throw ConfigError("unknown architecture '" + name + "'");
    kinds.push_back(*kind);
  }
  return kinds;
}

ScenarioConfig config_or_default(const std::string& path) {
  if (path.empty()) {
    ScenarioConfig c;
    validate(c);
    return c;
  }
  return load_config(path);
}

void open_out(std::ofstream& file, const fs::path& path) {
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw SimulationError("cannot write " + path.string());
}

struct RunOptions {
  std::string config;
  std::optional<long> seed;
  std::optional<int> reps;
  std::string out = ".";
  unsigned threads = 0;
};

int do_run(const RunOptions& o, std::ostream& out) {
  ScenarioConfig config = config_or_default(o.config);
  if (o.seed) {
    if (*o.seed < 0) throw ConfigError("--seed must be >= 0");
    config.base_seed = static_cast<std::uint64_t>(*o.seed);
  }
  if (o.reps) config.replications = *o.reps;
  validate(config);

  const SummaryStats desktop = run_monte_carlo(ArchKind::Desktop, config, o.threads);
  const SummaryStats anyware = run_monte_carlo(ArchKind::Anyware, config, o.threads);

  std::vector<SummaryRow> rows;
  std::vector<ArchRecords> hourly;
  for (ArchKind kind : config.architectures) {
    SummaryRow row;
    row.stats = kind == ArchKind::Desktop   ? desktop
                : kind == ArchKind::Anyware ? anyware
                                            : run_monte_carlo(kind, config, o.threads);
    row.efficiency_vs_desktop = efficiency(row.stats, desktop);
    row.efficiency_vs_anyware = efficiency(row.stats, anyware);
    rows.push_back(row);
    hourly.push_back({kind, run_replication(kind, config, config.base_seed, true).records});
  }

  fs::create_directories(o.out);
  std::ofstream hourly_file, summary_file;
  open_out(hourly_file, fs::path(o.out) / "hourly.csv");
  write_hourly_csv(hourly_file, hourly);
  open_out(summary_file, fs::path(o.out) / "summary.csv");
  write_summary_csv(summary_file, config, rows);

  for (const auto& row : rows)
    out << to_string(row.stats.kind) << ": weighted " << format_number(row.stats.weighted.mean)
        << " Wh, generator " << format_number(row.stats.generator_hours.mean)
        << " h, efficiency vs desktop " << format_number(row.efficiency_vs_desktop)
        << ", vs anyware " << format_number(row.efficiency_vs_anyware) << '\n';
  return kExitOk;
}

struct SweepOptions {
  std::string config;
  std::string param;
  std::string values;
  std::string archs;
  std::string out = ".";
  unsigned threads = 0;
};

int do_sweep(const SweepOptions& o, std::ostream& out) {
  SweepSpec spec;
  spec.base = config_or_default(o.config);
  const auto param = parse_sweep_param(o.param);
  if (!param)
    throw ConfigError("unknown --param '" + o.param +
                      "' (expected outage_p, laptop_backup_hours or ups_backup_hours)");
  spec.param = *param;
  spec.values = parse_value_list(o.values);
  spec.architectures = o.archs.empty() ? spec.base.architectures : parse_arch_list(o.archs);
  validate(spec);

  const auto rows = run_sweep(spec, o.threads);

  fs::create_directories(o.out);
  std::ofstream csv;
  open_out(csv, fs::path(o.out) / "sweep.csv");
  write_sweep_csv(csv, spec, rows);
  if (spec.param == SweepParam::OutageP) {
    std::ofstream fig2, fig3;
    open_out(fig2, fs::path(o.out) / "fig2_efficiency.dat");
    write_efficiency_dat(fig2, spec, rows);
    open_out(fig3, fs::path(o.out) / "fig3_generator_hours.dat");
    write_generator_hours_dat(fig3, spec, rows);
  } else {
    std::ofstream fig4;
    open_out(fig4, fs::path(o.out) / "fig4_battery_sensitivity.dat");
    write_efficiency_dat(fig4, spec, rows);
  }
  out << rows.size() << " sweep rows written to " << o.out << '\n';
  return kExitOk;
}

struct OracleOptions {
  std::string config;
  std::string arch;
  double p = 0.0;
  std::optional<double> b_ups;
  std::optional<double> b_laptop;
  std::string policy;
  std::optional<double> g;
  bool recharge_on_generator = false;
  std::optional<long> horizon;
};

int do_oracle(const OracleOptions& o, std::ostream& out) {
  ScenarioConfig config = config_or_default(o.config);
  const auto kind = parse_arch(o.arch);
  if (!kind) throw ConfigError("unknown architecture '" + o.arch + "'");
  config.instant_recharge = true;
  config.outage = BernoulliOutage{o.p};
  if (o.b_ups) config.ups_backup_hours = *o.b_ups;
  if (o.b_laptop) config.laptop_backup_hours = *o.b_laptop;
  if (o.g) config.generator.overhead_factor = *o.g;
  if (o.recharge_on_generator) config.generator_recharges_batteries = true;
  if (!o.policy.empty()) {
    const auto policy = parse_depletion(o.policy);
    if (!policy) throw ConfigError("unknown --policy '" + o.policy + "'");
    config.laptop_depletion = *policy;
  }
  validate(config);

  const OracleModel model = make_oracle_model(*kind, config);
  out << "arch = " << to_string(*kind) << '\n'
      << "p = " << format_number(model.p) << '\n'
      << "trigger_backup_hours = " << model.trigger_backup << '\n'
      << "generator_fraction = " << format_number(expected_generator_fraction(model)) << '\n'
      << "weighted_energy_per_hour_wh = " << format_number(expected_weighted_energy_per_hour(model))
      << '\n'
      << "idle_laptops_per_hour = " << format_number(expected_idle_laptops_per_hour(model)) << '\n';
  if (o.horizon) {
    if (*o.horizon < 1) throw ConfigError("--horizon must be >= 1");
    const auto h = expected_over_horizon(model, *o.horizon);
    out << "horizon_hours = " << *o.horizon << '\n'
        << "horizon_generator_hours = " << format_number(h.generator_hours) << '\n'
        << "horizon_weighted_energy_wh = " << format_number(h.weighted_energy) << '\n';
  }
  return kExitOk;
}

}  // namespace

std::vector<double> parse_value_list(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("range must be start:step:end");
    return progression(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
  }
  std::vector<double> values;
  const auto tokens = split(text, ',');
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "...") {
      if (values.size() < 2 || i + 1 >= tokens.size())
        throw ConfigError("'...' needs two values before it and one after");
      const double step = values[values.size() - 1] - values[values.size() - 2];
      auto filled = progression(values.back(), step, parse_double(tokens[i + 1]));
      values.insert(values.end(), filled.begin() + 1, filled.end());
      if (values.back() != tidy(parse_double(tokens[i + 1]))) values.push_back(parse_double(tokens[i + 1]));
      ++i;
      continue;
    }
    if (tokens[i].empty()) throw ConfigError("empty entry in value list '" + text + "'");
    values.push_back(parse_double(tokens[i]));
  }
  return values;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hourly energy simulator for office fleets under intermittent mains power",
               "anywaresim"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Monte Carlo run of every configured architecture");
  run_cmd->add_option("--config", run.config, "Scenario TOML file")->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", run.seed, "Base seed");
  run_cmd->add_option("--reps", run.reps, "Replications");
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_option("--threads", run.threads, "Worker threads (0 = all cores)");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep over architectures");
  sweep_cmd->add_option("--config", sweep.config, "Scenario TOML file")->check(CLI::ExistingFile);
  sweep_cmd->add_option("--param", sweep.param, "outage_p | laptop_backup_hours | ups_backup_hours")
      ->required();
  sweep_cmd->add_option("--values", sweep.values, "e.g. 0,0.5,1 or 0:0.1:1 or 0,0.1,...,1")
      ->required();
  sweep_cmd->add_option("--archs", sweep.archs, "Comma-separated architectures");
  sweep_cmd->add_option("--out", sweep.out, "Output directory");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)");

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Closed-form expectations (instant recharge)");
  oracle_cmd->add_option("--config", oracle.config, "Scenario TOML file")->check(CLI::ExistingFile);
  oracle_cmd->add_option("--arch", oracle.arch, "Architecture")->required();
  oracle_cmd->add_option("--p", oracle.p, "Outage probability")->required();
  oracle_cmd->add_option("--b-ups", oracle.b_ups, "UPS backup hours");
  oracle_cmd->add_option("--b-laptop", oracle.b_laptop, "Laptop backup hours");
  oracle_cmd->add_option("--policy", oracle.policy, "start_generator | idle_wait");
  oracle_cmd->add_option("--g", oracle.g, "Generator overhead factor");
  oracle_cmd->add_flag("--recharge-on-generator", oracle.recharge_on_generator,
                       "Batteries recharge while the generator runs");
  oracle_cmd->add_option("--horizon", oracle.horizon, "Also print finite-horizon expectations");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (run_cmd->parsed()) return do_run(run, out);
    if (sweep_cmd->parsed()) return do_sweep(sweep, out);
    return do_oracle(oracle, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace anywaresim
