// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anywaresim/analytic.hpp"
#include "anywaresim/archsim.hpp"
#include "anywaresim/cli.hpp"
#include "anywaresim/metrics.hpp"

using namespace anywaresim;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

ScenarioConfig defaults_at(double p) {
  ScenarioConfig c;
  c.outage = BernoulliOutage{p};
  return c;
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> values;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) values.push_back(std::round((lo + i * step) * 1e12) / 1e12);
  return values;
}

const SweepRow& find_row(const std::vector<SweepRow>& rows, double value, ArchKind kind) {
  for (const auto& r : rows)
    if (r.value == value && r.kind == kind) return r;
  throw SimulationError("missing sweep row");
}

Outcome ac1_desktop_reduction() {
  Outcome o;
  SweepSpec spec{SweepParam::OutageP, grid(0.0, 0.8, 0.1), std::vector<ArchKind>(std::begin(kAllArchKinds), std::end(kAllArchKinds)),
                 ScenarioConfig{}};
  const auto start = std::chrono::steady_clock::now();
  const auto rows = run_sweep(spec);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double lo = 1.0, hi = 0.0;
  for (double p : spec.values) {
    const double e = find_row(rows, p, ArchKind::AnywareDc).efficiency_vs_desktop;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    if (e < 0.75 || e > 0.85) o.fail(fmt("p=%.1f efficiency %.4f outside [0.75, 0.85]", p, e));
  }
  if (seconds >= 60.0) o.fail(fmt("sweep took %.1f s", seconds));
  if (o.pass) o.detail = fmt("efficiency vs desktop in [%.4f, %.4f], sweep %.1f s", lo, hi, seconds);
  return o;
}

Outcome ac2_oracle_equivalence() {
  Outcome o;
  struct Variant {
    ArchKind kind;
    LaptopDepletion policy;
  };
  const Variant variants[] = {{ArchKind::Desktop, LaptopDepletion::StartGenerator},
                              {ArchKind::Anyware, LaptopDepletion::StartGenerator},
                              {ArchKind::AnywareUps, LaptopDepletion::StartGenerator},
                              {ArchKind::AnywareDc, LaptopDepletion::StartGenerator},
                              {ArchKind::AnywareDc, LaptopDepletion::IdleWait}};
  constexpr long kHorizon = 100000;
  int checks = 0;
  double worst = 0.0;  // largest |diff| / SE where SE > 0
  for (const auto& v : variants) {
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (double b : {0.0, 1.0, 3.0}) {
        ScenarioConfig c = defaults_at(p);
        c.instant_recharge = true;
        c.laptop_depletion = v.policy;
        c.laptop_backup_hours = b;
        c.ups_backup_hours = b;
        c.horizon_hours = kHorizon;
        c.replications = 30;
        const auto mc = run_monte_carlo(v.kind, c);
        const auto exact = expected_over_horizon(make_oracle_model(v.kind, c), kHorizon);

        const auto compare = [&](const char* what, const Estimate& est, double expected) {
          ++checks;
          const double diff = std::abs(est.mean - expected);
          const double tol = 3.0 * est.std_error + 1e-9 * std::abs(expected);
          if (est.std_error > 0.0) worst = std::max(worst, diff / est.std_error);
          if (diff > tol)
            o.fail(fmt("%s %s p=%.2f B=%.0f %s: mc %.9g vs oracle %.9g (SE %.3g)",
                       std::string(to_string(v.kind)).c_str(),
                       std::string(to_string(v.policy)).c_str(), p, b, what, est.mean, expected,
                       est.std_error));
        };
        compare("generator_hours", mc.generator_hours, exact.generator_hours);
        compare("weighted_wh", mc.weighted, exact.weighted_energy);
      }
    }
  }
  if (o.pass) o.detail = fmt("%d comparisons, worst deviation %.2f SE", checks, worst);
  return o;
}

Outcome ac3_dc_vs_anyware() {
  Outcome o;
  SweepSpec spec{SweepParam::OutageP, {0.0, 0.05, 0.1, 0.4, 0.5, 0.6}, {ArchKind::AnywareDc},
                 ScenarioConfig{}};
  const auto rows = run_sweep(spec);
  std::string values;
  for (const auto& r : rows) {
    const double e = r.efficiency_vs_anyware;
    values += fmt(" p=%.2f:%.4f", r.value, e);
    if (r.value >= 0.4 && (e < 0.10 || e > 0.25))
      o.fail(fmt("p=%.2f efficiency %.4f outside [0.10, 0.25]", r.value, e));
    if (r.value <= 0.1 && e >= 0.08) o.fail(fmt("p=%.2f efficiency %.4f not below 0.08", r.value, e));
  }
  if (o.pass) o.detail = "efficiency vs anyware" + values;
  return o;
}

Outcome ac4_generator_reduction() {
  Outcome o;
  std::string values;
  for (auto policy : {LaptopDepletion::StartGenerator, LaptopDepletion::IdleWait}) {
    ScenarioConfig base;
    base.laptop_depletion = policy;
    SweepSpec spec{SweepParam::OutageP, grid(0.3, 0.7, 0.1),
                   {ArchKind::AnywareUps, ArchKind::AnywareDc}, base};
    const auto rows = run_sweep(spec);
    for (double p : spec.values) {
      const double ups = find_row(rows, p, ArchKind::AnywareUps).stats.generator_hours.mean;
      const double dc = find_row(rows, p, ArchKind::AnywareDc).stats.generator_hours.mean;
      if (policy == LaptopDepletion::StartGenerator) {
        if (dc > ups || (p >= 0.4 && !(dc < ups)))
          o.fail(fmt("start_generator p=%.1f: dc %.2f h vs ups %.2f h", p, dc, ups));
      } else if (dc > 0.7 * ups) {
        o.fail(fmt("idle_wait p=%.1f: dc %.2f h exceeds 0.7 x ups %.2f h", p, dc, ups));
      }
      if (p == 0.5)
        values += fmt(" %s p=0.5 dc/ups=%.3f", std::string(to_string(policy)).c_str(), dc / ups);
    }
  }
  if (o.pass) o.detail = "generator hours" + values;
  return o;
}

Outcome ac5_battery_sensitivity() {
  Outcome o;
  const std::vector<double> hours{0.0, 1.0, 2.0, 3.0, 4.0};
  std::string values;
  for (auto param : {SweepParam::LaptopBackupHours, SweepParam::UpsBackupHours}) {
    SweepSpec spec{param, hours, {ArchKind::AnywareDc}, defaults_at(0.5)};
    const auto rows = run_sweep(spec);
    const std::string name(to_string(param));
    values += " " + name + ":";
    double prev = -1.0;
    for (const auto& r : rows) {
      const double e = r.efficiency_vs_anyware;
      values += fmt(" %.4f", e);
      if (e < prev)
        o.fail(fmt("%s decreases at %.0f h (%.7f < %.7f, delta %.2g)", name.c_str(), r.value, e, prev,
                   e - prev));
      prev = e;
    }
    if (rows[0].efficiency_vs_anyware > 0.02)
      o.fail(fmt("%s 0 h efficiency %.4f above 0.02", name.c_str(), rows[0].efficiency_vs_anyware));
    if (param == SweepParam::LaptopBackupHours && rows[1].efficiency_vs_anyware < 0.05)
      o.fail(fmt("laptop 1 h efficiency %.4f below 0.05", rows[1].efficiency_vs_anyware));
  }
  if (o.pass) o.detail = "efficiency vs anyware over 0..4 h," + values;
  return o;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome ac6_invariants() {
  Outcome o;
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr int kScenarios = 10000;
  long hours = 0;
  double worst_residual = 0.0;
  for (int i = 0; i < kScenarios && o.pass; ++i) {
    ScenarioConfig c;
    c.users = 2 + static_cast<int>(unit(rng) * 60);
    c.laptop_backup_hours = std::floor(unit(rng) * 12.0) / 2.0;
    c.ups_backup_hours = unit(rng) * 6.0;
    c.laptop_depletion = unit(rng) < 0.5 ? LaptopDepletion::StartGenerator : LaptopDepletion::IdleWait;
    c.generator_recharges_batteries = unit(rng) < 0.3;
    c.instant_recharge = unit(rng) < 0.2;
    c.ups_overhead_mode = unit(rng) < 0.2 ? UpsOverheadMode::Fixed : UpsOverheadMode::Proportional;
    if (unit(rng) < 0.3) c.laptop_backup_overrides = {unit(rng) * 4.0, 0.0};
    if (unit(rng) < 0.3) c.ups_charge_w = unit(rng) * 2000.0;
    c.generator.overhead_factor = 1.0 + unit(rng);
    c.outage = BernoulliOutage{unit(rng)};
    c.horizon_hours = 48;
    const ArchKind kind = kAllArchKinds[static_cast<std::size_t>(i % 4)];
    const std::uint64_t seed = rng();

    const auto result = run_replication(kind, c, seed, false, [&](const HourlyRecord& r, const ArchState& s) {
      ++hours;
      const double residual = std::abs(r.supplied() - r.consumed());
      worst_residual = std::max(worst_residual, residual);
      if (residual > 1e-9) o.fail(fmt("scenario %d hour %ld: residual %.3g Wh", i, r.hour, residual));
      if (!s.batteries_within_bounds()) o.fail(fmt("scenario %d hour %ld: battery out of bounds", i, r.hour));
    });
    if (kind == ArchKind::Desktop && result.stats.generator_hours != result.stats.outage_hours)
      o.fail(fmt("scenario %d: desktop generator hours %ld != outage hours %ld", i,
                 result.stats.generator_hours, result.stats.outage_hours));
  }

  // Determinism through the CLI.
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "anywaresim_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "scenario.toml") << "horizon_hours = 720\nreplications = 50\n[outage]\np = 0.4\n";
  std::ostringstream sink;
  for (const char* run : {"a", "b"}) {
    const int code = cli_main({"run", "--config", (dir / "scenario.toml").string(), "--seed", "7",
                               "--out", (dir / run).string()},
                              sink, sink);
    if (code != kExitOk) o.fail(std::string("cli run failed: ") + sink.str());
  }
  for (const char* f : {"summary.csv", "hourly.csv"})
    if (slurp(dir / "a" / f).empty() || slurp(dir / "a" / f) != slurp(dir / "b" / f))
      o.fail(std::string(f) + " differs between identical runs");

  if (o.pass)
    o.detail = fmt("%d scenarios, %ld hours, worst residual %.3g Wh, CSVs byte-identical", kScenarios,
                   hours, worst_residual);
  return o;
}

}  // namespace

// Optional arguments select criteria by prefix, e.g. `acceptance AC2 AC6`.
int main(int argc, char** argv) {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 desktop reduction", ac1_desktop_reduction},
      {"AC2 oracle equivalence", ac2_oracle_equivalence},
      {"AC3 AnywareDC vs Anyware band", ac3_dc_vs_anyware},
      {"AC4 generator reduction", ac4_generator_reduction},
      {"AC5 battery sensitivity", ac5_battery_sensitivity},
      {"AC6 invariants", ac6_invariants},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    bool selected = argc < 2;
    for (int i = 1; i < argc; ++i) selected = selected || std::string(name).rfind(argv[i], 0) == 0;
    if (!selected) continue;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
