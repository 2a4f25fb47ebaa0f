#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "anywaresim/metrics.hpp"

using namespace anywaresim;

namespace {

ScenarioConfig small(double p, int reps = 200) {
  ScenarioConfig c;
  c.outage = BernoulliOutage{p};
  c.replications = reps;
  return c;
}

}  // namespace

TEST_CASE("estimate") {
  auto single = estimate({3.25});
  CHECK(single.mean == 3.25);
  CHECK(single.half_width == 0.0);

  auto same = estimate(std::vector<double>(100, 0.1));
  CHECK(same.mean == 0.1);
  CHECK(same.half_width == 0.0);

  auto e = estimate({1.0, 2.0, 3.0, 4.0});
  CHECK(e.mean == doctest::Approx(2.5));
  CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(e.half_width == doctest::Approx(1.959963984540054 * e.std_error));
}

TEST_CASE("one replication summarizes to itself") {
  ScenarioConfig c = small(0.4, 1);
  const auto s = run_monte_carlo(ArchKind::AnywareDc, c);
  const auto r = run_replication(ArchKind::AnywareDc, c, c.base_seed).stats;
  CHECK(s.weighted.mean == r.weighted);
  CHECK(s.generator_hours.mean == static_cast<double>(r.generator_hours));
  CHECK(s.fuel.mean == r.fuel);
}

TEST_CASE("no outages, no spread") {
  const ScenarioConfig c = small(0.0, 100);
  for (auto kind : kAllArchKinds) {
    const auto s = run_monte_carlo(kind, c);
    CHECK(s.weighted.half_width == 0.0);
    CHECK(s.electrical.half_width == 0.0);
    CHECK(s.generator_hours.half_width == 0.0);
    CHECK(s.fuel.half_width == 0.0);
  }
}

TEST_CASE("Desktop generator hours follow the binomial mean") {
  ScenarioConfig c = small(0.5, 1000);
  const auto s = run_monte_carlo(ArchKind::Desktop, c);
  CHECK(std::abs(s.generator_hours.mean - 360.0) <= 3.0 * s.generator_hours.std_error);
  CHECK(s.fuel.mean == doctest::Approx(s.generator_hours.mean));
  CHECK(s.weighted.mean >= s.electrical.mean);
}

TEST_CASE("aggregation does not depend on replication order or thread count") {
  ScenarioConfig c = small(0.5, 64);
  const auto serial = run_monte_carlo(ArchKind::AnywareUps, c, 1);
  const auto parallel = run_monte_carlo(ArchKind::AnywareUps, c, 4);
  CHECK(serial.weighted.mean == parallel.weighted.mean);
  CHECK(serial.weighted.half_width == parallel.weighted.half_width);

  auto reps = serial.replications;
  std::shuffle(reps.begin(), reps.end(), std::mt19937(3));
  const auto shuffled = summarize(ArchKind::AnywareUps, c, reps);
  CHECK(shuffled.weighted.mean == serial.weighted.mean);
  CHECK(shuffled.weighted.std_error == serial.weighted.std_error);
  CHECK(shuffled.generator_hours.mean == serial.generator_hours.mean);
}

TEST_CASE("efficiency") {
  const ScenarioConfig none = small(0.0, 1);
  const auto desktop = run_monte_carlo(ArchKind::Desktop, none);
  const auto anyware = run_monte_carlo(ArchKind::Anyware, none);
  CHECK(efficiency(anyware, desktop) == doctest::Approx(1.0 - 876.0 / 4131.0));
  CHECK(efficiency(anyware, desktop) == doctest::Approx(0.788).epsilon(0.001));
  CHECK(efficiency(desktop, desktop) == 0.0);

  SummaryStats zero;
  CHECK_THROWS_AS(efficiency(desktop, zero), SimulationError);
}

TEST_CASE("AnywareDC beats Anyware at p = 0.5 with default batteries") {
  const ScenarioConfig c = small(0.5, 300);
  const double e = efficiency(run_monte_carlo(ArchKind::AnywareDc, c),
                              run_monte_carlo(ArchKind::Anyware, c));
  CHECK(e >= 0.10);
  CHECK(e <= 0.25);
}

TEST_CASE("sweeps") {
  SUBCASE("desktop against itself") {
    SweepSpec spec{SweepParam::OutageP, {0.0, 0.5, 1.0}, {ArchKind::Desktop}, small(0.0, 20)};
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) CHECK(r.efficiency_vs_desktop == 0.0);
    CHECK(rows[0].value == 0.0);
    CHECK(rows[2].value == 1.0);
  }
  SUBCASE("no UPS battery, no improvement") {
    SweepSpec spec{SweepParam::UpsBackupHours, {0.0}, {ArchKind::AnywareDc}, small(0.5, 100)};
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].efficiency_vs_anyware <= 0.02);
  }
  SUBCASE("laptop backup helps") {
    SweepSpec spec{SweepParam::LaptopBackupHours, {0.0, 1.0, 3.0}, {ArchKind::AnywareDc},
                   small(0.5, 100)};
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].efficiency_vs_anyware < rows[1].efficiency_vs_anyware);
    CHECK(rows[1].efficiency_vs_anyware < rows[2].efficiency_vs_anyware);
  }
  SUBCASE("rows come out in value-major order with paired outages") {
    SweepSpec spec{SweepParam::OutageP, {0.2, 0.6}, {ArchKind::AnywareDc, ArchKind::Desktop,
                                                     ArchKind::AnywareUps}, small(0.0, 10)};
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].kind == ArchKind::AnywareDc);
    CHECK(rows[1].kind == ArchKind::Desktop);
    CHECK(rows[3].value == 0.6);
    for (int v = 0; v < 2; ++v)
      for (int a = 1; a < 3; ++a)
        for (std::size_t r = 0; r < 10; ++r)
          CHECK(rows[v * 3 + a].stats.replications[r].outage_hours ==
                rows[v * 3].stats.replications[r].outage_hours);
  }
  SUBCASE("invalid specs") {
    SweepSpec spec{SweepParam::OutageP, {}, {ArchKind::Desktop}, small(0.0)};
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);
    spec.values = {1.5};
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);
    spec = {SweepParam::LaptopBackupHours, {-1.0}, {ArchKind::Desktop}, small(0.0)};
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);
  }
}
