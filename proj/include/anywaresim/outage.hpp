// Per-hour mains availability.
//
// Random stream contract: each replication owns a std::mt19937_64 seeded with
// base_seed + replication. A Bernoulli policy consumes exactly one 64-bit draw
// per hour and maps it to [0, 1) as (draw >> 11) * 2^-53, so availability
// sequences are identical on every conforming standard library.
#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace anywaresim {

using RandomStream = std::mt19937_64;

RandomStream make_stream(std::uint64_t base_seed, std::uint64_t replication);

/// Uniform variate in [0, 1) with 53 random bits.
double uniform01(RandomStream& rng);

/// Raised for malformed input files and invalid parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a simulation cannot proceed (e.g. trace exhausted).
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BernoulliOutage {
  double p = 0.0;  // probability that a given hour is an outage
};

/// Daily blackout windows [start, end) in hour-of-day.
struct ScheduledOutage {
  std::vector<std::pair<int, int>> windows;
};

struct TraceOutage {
  std::vector<bool> bits;  // true = mains available
};

using OutagePolicy = std::variant<BernoulliOutage, ScheduledOutage, TraceOutage>;

/// Throws ConfigError when the policy's parameters are out of domain.
void validate(const OutagePolicy& policy);

/// Whether mains power is up during `hour`. Bernoulli consumes one draw.
bool mains_available(const OutagePolicy& policy, long hour, RandomStream& rng);

/// Parses a trace: one "0" or "1" per line, LF or CRLF, 1 = mains available.
OutagePolicy parse_trace(const std::string& text);
OutagePolicy load_trace(const std::filesystem::path& path);

std::string describe(const OutagePolicy& policy);

}  // namespace anywaresim
