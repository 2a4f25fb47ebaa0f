#include "anywaresim/outage.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace anywaresim {

RandomStream make_stream(std::uint64_t base_seed, std::uint64_t replication) {
  return RandomStream(base_seed + replication);
}

double uniform01(RandomStream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void validate(const OutagePolicy& policy) {
  if (const auto* b = std::get_if<BernoulliOutage>(&policy)) {
    if (!(b->p >= 0.0 && b->p <= 1.0)) throw ConfigError("outage.p out of [0,1]");
  } else if (const auto* s = std::get_if<ScheduledOutage>(&policy)) {
    auto windows = s->windows;
    std::sort(windows.begin(), windows.end());
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const auto [start, end] = windows[i];
      if (start < 0 || end > 24 || start >= end)
        throw ConfigError("outage.windows entry [" + std::to_string(start) + ", " +
                          std::to_string(end) + ") must satisfy 0 <= start < end <= 24");
      if (i > 0 && windows[i - 1].second > start)
        throw ConfigError("outage.windows overlap");
    }
  } else if (const auto* t = std::get_if<TraceOutage>(&policy)) {
    if (t->bits.empty()) throw ConfigError("outage trace is empty");
  }
}

bool mains_available(const OutagePolicy& policy, long hour, RandomStream& rng) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BernoulliOutage>) {
          return !(uniform01(rng) < v.p);
        } else if constexpr (std::is_same_v<T, ScheduledOutage>) {
          const int hod = static_cast<int>(hour % 24);
          for (const auto& [start, end] : v.windows)
            if (hod >= start && hod < end) return false;
          return true;
        } else {
          if (hour < 0 || static_cast<std::size_t>(hour) >= v.bits.size())
            throw SimulationError("outage trace has " + std::to_string(v.bits.size()) +
                                  " hours; hour " + std::to_string(hour) + " requested");
          return v.bits[static_cast<std::size_t>(hour)];
        }
      },
      policy);
}

OutagePolicy parse_trace(const std::string& text) {
  TraceOutage trace;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "1") {
      trace.bits.push_back(true);
    } else if (line == "0") {
      trace.bits.push_back(false);
    } else {
      throw ConfigError("trace parse error at line " + std::to_string(lineno) +
                        ": expected 0 or 1, got '" + line + "'");
    }
  }
  if (trace.bits.empty()) throw ConfigError("trace is empty");
  return trace;
}

OutagePolicy load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open trace file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_trace(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string describe(const OutagePolicy& policy) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        std::ostringstream out;
        if constexpr (std::is_same_v<T, BernoulliOutage>) {
          out << "bernoulli(p=" << v.p << ")";
        } else if constexpr (std::is_same_v<T, ScheduledOutage>) {
          out << "scheduled(";
          for (std::size_t i = 0; i < v.windows.size(); ++i)
            out << (i ? " " : "") << v.windows[i].first << "-" << v.windows[i].second;
          out << ")";
        } else {
          out << "trace(" << v.bits.size() << "h)";
        }
        return out.str();
      },
      policy);
}

}  // namespace anywaresim
