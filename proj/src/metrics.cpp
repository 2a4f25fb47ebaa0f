#include "anywaresim/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace anywaresim {

namespace {

constexpr double kZ95 = 1.959963984540054;

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs job(i) for i in [0, count) on a small pool; rethrows the first failure.
template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job job) {
  const unsigned workers = worker_count(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

template <typename Field>
Estimate estimate_field(const std::vector<ReplicationStats>& reps, Field field) {
  std::vector<double> samples;
  samples.reserve(reps.size());
  for (const auto& r : reps) samples.push_back(static_cast<double>(field(r)));
  return estimate(samples);
}

}  // namespace

Estimate estimate(const std::vector<double>& input) {
  Estimate e;
  if (input.empty()) return e;
  std::vector<double> samples = input;
  std::sort(samples.begin(), samples.end());
  if (samples.front() == samples.back()) {
    e.mean = samples.front();
    return e;
  }
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double n = static_cast<double>(samples.size());
  e.mean = sum / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - e.mean) * (x - e.mean);
  const double variance = ss / (n - 1.0);
  e.std_error = std::sqrt(variance / n);
  e.half_width = kZ95 * e.std_error;
  return e;
}

SummaryStats summarize(ArchKind kind, const ScenarioConfig& config,
                       std::vector<ReplicationStats> replications) {
  SummaryStats s;
  s.kind = kind;
  s.horizon = config.horizon_hours;
  s.generator = config.generator;
  s.replications = std::move(replications);
  const auto& reps = s.replications;
  s.from_mains = estimate_field(reps, [](const auto& r) { return r.from_mains; });
  s.from_generator = estimate_field(reps, [](const auto& r) { return r.from_generator; });
  s.from_ups_battery = estimate_field(reps, [](const auto& r) { return r.from_ups_battery; });
  s.from_laptop_batteries =
      estimate_field(reps, [](const auto& r) { return r.from_laptop_batteries; });
  s.electrical = estimate_field(reps, [](const auto& r) { return r.electrical; });
  s.weighted = estimate_field(reps, [](const auto& r) { return r.weighted; });
  s.generator_hours = estimate_field(reps, [](const auto& r) { return r.generator_hours; });
  s.fuel = estimate_field(reps, [](const auto& r) { return r.fuel; });
  s.idle_laptop_hours = estimate_field(reps, [](const auto& r) { return r.idle_laptop_hours; });
  s.outage_hours = estimate_field(reps, [](const auto& r) { return r.outage_hours; });
  return s;
}

SummaryStats run_monte_carlo(ArchKind kind, const ScenarioConfig& config, unsigned threads) {
  if (config.replications < 1) throw SimulationError("replications must be >= 1");
  std::vector<ReplicationStats> reps(static_cast<std::size_t>(config.replications));
  parallel_for(reps.size(), threads, [&](std::size_t r) {
    reps[r] = run_replication(kind, config, config.base_seed + r).stats;
  });
  return summarize(kind, config, std::move(reps));
}

double efficiency(const SummaryStats& arch, const SummaryStats& baseline) {
  if (baseline.weighted.mean == 0.0)
    throw SimulationError("efficiency undefined: baseline weighted energy is zero");
  return 1.0 - arch.weighted.mean / baseline.weighted.mean;
}

std::string_view to_string(SweepParam param) {
  switch (param) {
    case SweepParam::OutageP: return "outage_p";
    case SweepParam::LaptopBackupHours: return "laptop_backup_hours";
    case SweepParam::UpsBackupHours: return "ups_backup_hours";
  }
  return "unknown";
}

std::optional<SweepParam> parse_sweep_param(std::string_view name) {
  for (auto p : {SweepParam::OutageP, SweepParam::LaptopBackupHours, SweepParam::UpsBackupHours})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParam param, double value) {
  ScenarioConfig c = base;
  switch (param) {
    case SweepParam::OutageP: c.outage = BernoulliOutage{value}; break;
    case SweepParam::LaptopBackupHours: c.laptop_backup_hours = value; break;
    case SweepParam::UpsBackupHours: c.ups_backup_hours = value; break;
  }
  return c;
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep values must not be empty");
  if (spec.architectures.empty()) throw ConfigError("sweep architectures must not be empty");
  for (double v : spec.values) {
    if (spec.param == SweepParam::OutageP && !(v >= 0.0 && v <= 1.0))
      throw ConfigError("outage.p out of [0,1]");
    if (spec.param != SweepParam::OutageP && !(std::isfinite(v) && v >= 0.0))
      throw ConfigError(std::string(to_string(spec.param)) + " must be >= 0");
  }
  validate(apply_sweep_value(spec.base, spec.param, spec.values.front()));
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  validate(spec);
  std::vector<SweepRow> rows;
  for (double value : spec.values) {
    const ScenarioConfig config = apply_sweep_value(spec.base, spec.param, value);
    const SummaryStats desktop = run_monte_carlo(ArchKind::Desktop, config, threads);
    const SummaryStats anyware = run_monte_carlo(ArchKind::Anyware, config, threads);
    for (ArchKind kind : spec.architectures) {
      SweepRow row;
      row.value = value;
      row.kind = kind;
      if (kind == ArchKind::Desktop)
        row.stats = desktop;
      else if (kind == ArchKind::Anyware)
        row.stats = anyware;
      else
        row.stats = run_monte_carlo(kind, config, threads);
      row.efficiency_vs_desktop = efficiency(row.stats, desktop);
      row.efficiency_vs_anyware = efficiency(row.stats, anyware);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace anywaresim
