#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "anywaresim/outage.hpp"

using namespace anywaresim;

TEST_CASE("bernoulli extremes") {
  RandomStream rng = make_stream(42, 0);
  for (long h = 0; h < 1000; ++h) CHECK(mains_available(BernoulliOutage{0.0}, h, rng));
  for (long h = 0; h < 1000; ++h) CHECK_FALSE(mains_available(BernoulliOutage{1.0}, h, rng));
}

TEST_CASE("bernoulli draws exactly one variate per hour") {
  RandomStream a = make_stream(5, 0), b = make_stream(5, 0);
  for (long h = 0; h < 100; ++h) {
    mains_available(BernoulliOutage{0.3}, h, a);
    b();
  }
  CHECK(a() == b());
}

TEST_CASE("bernoulli outage frequency converges to p") {
  for (double p : {0.1, 0.5, 0.83}) {
    RandomStream rng = make_stream(1234, 0);
    const long n = 1'000'000;
    long outages = 0;
    for (long h = 0; h < n; ++h)
      if (!mains_available(BernoulliOutage{p}, h, rng)) ++outages;
    const double freq = static_cast<double>(outages) / n;
    CHECK(std::abs(freq - p) < 3.0 * std::sqrt(p * (1.0 - p) / n));
  }
}

TEST_CASE("same seed, same availability sequence") {
  RandomStream a = make_stream(42, 3), b = make_stream(42, 3), c = make_stream(42, 4);
  bool differs = false;
  for (long h = 0; h < 500; ++h) {
    const bool x = mains_available(BernoulliOutage{0.5}, h, a);
    CHECK(x == mains_available(BernoulliOutage{0.5}, h, b));
    differs |= x != mains_available(BernoulliOutage{0.5}, h, c);
  }
  CHECK(differs);
}

TEST_CASE("uniform01 stays in [0, 1)") {
  RandomStream rng = make_stream(0, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(rng);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("scheduled policy is 24-hour periodic") {
  const OutagePolicy policy = ScheduledOutage{{{8, 10}, {18, 19}}};
  RandomStream rng = make_stream(0, 0);
  CHECK(mains_available(policy, 7, rng));
  CHECK_FALSE(mains_available(policy, 8, rng));
  CHECK_FALSE(mains_available(policy, 9, rng));
  CHECK(mains_available(policy, 10, rng));
  CHECK_FALSE(mains_available(policy, 18, rng));
  for (long h = 0; h < 24; ++h)
    for (long day = 1; day < 5; ++day)
      CHECK(mains_available(policy, h, rng) == mains_available(policy, h + 24 * day, rng));
}

TEST_CASE("scheduled windows are validated") {
  CHECK_NOTHROW(validate(ScheduledOutage{{{0, 24}}}));
  CHECK_THROWS_AS(validate(ScheduledOutage{{{8, 10}, {9, 11}}}), ConfigError);
  CHECK_THROWS_AS(validate(ScheduledOutage{{{-1, 3}}}), ConfigError);
  CHECK_THROWS_AS(validate(ScheduledOutage{{{5, 5}}}), ConfigError);
  CHECK_THROWS_AS(validate(ScheduledOutage{{{20, 25}}}), ConfigError);
  CHECK_THROWS_WITH_AS(validate(BernoulliOutage{1.4}), "outage.p out of [0,1]", ConfigError);
}

TEST_CASE("trace lookup and bounds") {
  const OutagePolicy trace = TraceOutage{{true, true, false}};
  RandomStream rng = make_stream(0, 0);
  CHECK(mains_available(trace, 0, rng));
  CHECK_FALSE(mains_available(trace, 2, rng));
  CHECK_THROWS_AS(mains_available(trace, 3, rng), SimulationError);
}

TEST_CASE("parse_trace") {
  auto t = std::get<TraceOutage>(parse_trace("1\n0\n1\n"));
  CHECK(t.bits == std::vector<bool>{true, false, true});

  auto crlf = std::get<TraceOutage>(parse_trace("1\r\n0\r\n"));
  CHECK(crlf.bits == std::vector<bool>{true, false});

  CHECK_THROWS_WITH_AS(parse_trace("1\n0\n2\n"), doctest::Contains("line 3"), ConfigError);
  CHECK_THROWS_AS(parse_trace(""), ConfigError);
  CHECK_THROWS_AS(parse_trace("1\n\n1\n"), ConfigError);
}

TEST_CASE("load_trace reads a file and reports missing ones") {
  const auto path = std::filesystem::temp_directory_path() / "anywaresim_trace_test.txt";
  {
    std::ofstream out(path);
    out << "0\n1\n";
  }
  auto t = std::get<TraceOutage>(load_trace(path));
  CHECK(t.bits == std::vector<bool>{false, true});
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_trace(path), ConfigError);
}
