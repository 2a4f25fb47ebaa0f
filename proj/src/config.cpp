#include "anywaresim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "anywaresim/report.hpp"

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace anywaresim {

namespace {

std::string where(const toml::node& node) {
  const auto& src = node.source();
  if (src.begin.line == 0) return "";
  return " (line " + std::to_string(src.begin.line) + ")";
}

[[noreturn]] void fail(const std::string& key, const toml::node& node, const std::string& what) {
  throw ConfigError(key + ": " + what + where(node));
}

void reject_unknown(const toml::table& table, const std::string& prefix,
                    const std::set<std::string>& allowed) {
  for (const auto& [k, v] : table) {
    const std::string key(k.str());
    if (!allowed.count(key)) fail(prefix + key, v, "unknown key");
  }
}

double as_number(const std::string& key, const toml::node& node) {
  if (auto v = node.value_exact<double>()) return *v;
  if (auto v = node.value_exact<int64_t>()) return static_cast<double>(*v);
  fail(key, node, "expected a number");
}

long as_integer(const std::string& key, const toml::node& node) {
  if (auto v = node.value_exact<int64_t>()) return static_cast<long>(*v);
  fail(key, node, "expected an integer");
}

bool as_bool(const std::string& key, const toml::node& node) {
  if (auto v = node.value_exact<bool>()) return *v;
  fail(key, node, "expected true or false");
}

std::string as_string(const std::string& key, const toml::node& node) {
  if (auto v = node.value_exact<std::string>()) return *v;
  fail(key, node, "expected a string");
}

const toml::table* subtable(const toml::table& root, const std::string& name) {
  const toml::node* node = root.get(name);
  if (!node) return nullptr;
  if (!node->is_table()) fail(name, *node, "expected a table");
  return node->as_table();
}

template <typename Fn>
void with(const toml::table& table, const std::string& prefix, const char* key, Fn fn) {
  if (const toml::node* node = table.get(key)) fn(prefix + key, *node);
}

void read_fleet(const toml::table& t, ScenarioConfig& c) {
  reject_unknown(t, "fleet.", {"laptop_w", "desktop_w", "server_w", "switch_w", "switches",
                               "users_per_server", "servers"});
  with(t, "fleet.", "laptop_w", [&](auto k, auto& n) { c.draws.laptop = as_number(k, n); });
  with(t, "fleet.", "desktop_w", [&](auto k, auto& n) { c.draws.desktop = as_number(k, n); });
  with(t, "fleet.", "server_w", [&](auto k, auto& n) { c.draws.server = as_number(k, n); });
  with(t, "fleet.", "switch_w", [&](auto k, auto& n) { c.draws.sw = as_number(k, n); });
  with(t, "fleet.", "switches", [&](auto k, auto& n) { c.switches = static_cast<int>(as_integer(k, n)); });
  with(t, "fleet.", "users_per_server",
       [&](auto k, auto& n) { c.users_per_server = static_cast<int>(as_integer(k, n)); });
  with(t, "fleet.", "servers", [&](auto k, auto& n) { c.servers = static_cast<int>(as_integer(k, n)); });
}

void read_battery(const toml::table& t, ScenarioConfig& c) {
  reject_unknown(t, "battery.", {"laptop_backup_hours", "laptop_charge_w", "laptop_backup_overrides",
                                 "ups_backup_hours", "ups_rated_load_w", "ups_charge_w",
                                 "instant_recharge"});
  with(t, "battery.", "laptop_backup_hours",
       [&](auto k, auto& n) { c.laptop_backup_hours = as_number(k, n); });
  with(t, "battery.", "laptop_charge_w", [&](auto k, auto& n) { c.laptop_charge_w = as_number(k, n); });
  with(t, "battery.", "laptop_backup_overrides", [&](auto k, auto& n) {
    const auto* arr = n.as_array();
    if (!arr) fail(k, n, "expected an array of hours");
    c.laptop_backup_overrides.clear();
    for (const auto& item : *arr) c.laptop_backup_overrides.push_back(as_number(k, item));
  });
  with(t, "battery.", "ups_backup_hours", [&](auto k, auto& n) { c.ups_backup_hours = as_number(k, n); });
  with(t, "battery.", "ups_rated_load_w", [&](auto k, auto& n) { c.ups_rated_load_w = as_number(k, n); });
  with(t, "battery.", "ups_charge_w", [&](auto k, auto& n) { c.ups_charge_w = as_number(k, n); });
  with(t, "battery.", "instant_recharge", [&](auto k, auto& n) { c.instant_recharge = as_bool(k, n); });
}

void read_ups(const toml::table& t, ScenarioConfig& c) {
  reject_unknown(t, "ups.", {"overhead_mode", "overhead_coefficient", "overhead_fixed_w"});
  with(t, "ups.", "overhead_mode", [&](auto k, auto& n) {
    const auto mode = as_string(k, n);
    if (mode == "proportional")
      c.ups_overhead_mode = UpsOverheadMode::Proportional;
    else if (mode == "fixed")
      c.ups_overhead_mode = UpsOverheadMode::Fixed;
    else
      fail(k, n, "expected \"proportional\" or \"fixed\"");
  });
  with(t, "ups.", "overhead_coefficient",
       [&](auto k, auto& n) { c.ups_overhead_coefficient = as_number(k, n); });
  with(t, "ups.", "overhead_fixed_w", [&](auto k, auto& n) { c.ups_fixed_overhead_w = as_number(k, n); });
}

void read_generator(const toml::table& t, ScenarioConfig& c) {
  reject_unknown(t, "generator.", {"overhead_factor", "fuel_rate", "recharges_batteries"});
  with(t, "generator.", "overhead_factor",
       [&](auto k, auto& n) { c.generator.overhead_factor = as_number(k, n); });
  with(t, "generator.", "fuel_rate", [&](auto k, auto& n) { c.generator.fuel_rate = as_number(k, n); });
  with(t, "generator.", "recharges_batteries",
       [&](auto k, auto& n) { c.generator_recharges_batteries = as_bool(k, n); });
}

void read_outage(const toml::table& t, ScenarioConfig& c, const std::filesystem::path& base_dir) {
  reject_unknown(t, "outage.", {"policy", "p", "windows", "trace"});
  std::string policy = "bernoulli";
  with(t, "outage.", "policy", [&](auto k, auto& n) {
    policy = as_string(k, n);
    if (policy != "bernoulli" && policy != "scheduled" && policy != "trace")
      fail(k, n, "expected \"bernoulli\", \"scheduled\" or \"trace\"");
  });

  if (policy == "bernoulli") {
    BernoulliOutage b = std::get<BernoulliOutage>(ScenarioConfig{}.outage);
    with(t, "outage.", "p", [&](auto k, auto& n) { b.p = as_number(k, n); });
    c.outage = b;
  } else if (policy == "scheduled") {
    ScheduledOutage s;
    with(t, "outage.", "windows", [&](auto k, auto& n) {
      const auto* arr = n.as_array();
      if (!arr) fail(k, n, "expected an array of [start, end] pairs");
      for (const auto& item : *arr) {
        const auto* pair = item.as_array();
        if (!pair || pair->size() != 2) fail(k, item, "each window must be [start, end]");
        s.windows.emplace_back(static_cast<int>(as_integer(k, *pair->get(0))),
                               static_cast<int>(as_integer(k, *pair->get(1))));
      }
    });
    c.outage = s;
  } else {
    const toml::node* node = t.get("trace");
    if (!node) throw ConfigError("outage.trace: required when outage.policy = \"trace\"");
    std::filesystem::path path = as_string("outage.trace", *node);
    if (path.is_relative()) path = base_dir / path;
    c.trace_path = path.string();
    c.outage = load_trace(path);
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config parse error at line " << e.source().begin.line << ", column "
        << e.source().begin.column << ": " << e.description();
    throw ConfigError(msg.str());
  }

  ScenarioConfig c;
  reject_unknown(root, "", {"architectures", "users", "horizon_hours", "replications", "base_seed",
                            "laptop_depletion_policy", "fleet", "battery", "ups", "generator",
                            "outage"});
  with(root, "", "architectures", [&](auto k, auto& n) {
    const auto* arr = n.as_array();
    if (!arr) fail(k, n, "expected an array of architecture names");
    c.architectures.clear();
    for (const auto& item : *arr) {
      const auto name = as_string(k, item);
      const auto kind = parse_arch(name);
      if (!kind) fail(k, item, "unknown architecture \"" + name + "\"");
      c.architectures.push_back(*kind);
    }
  });
  with(root, "", "users", [&](auto k, auto& n) { c.users = static_cast<int>(as_integer(k, n)); });
  with(root, "", "horizon_hours", [&](auto k, auto& n) { c.horizon_hours = as_integer(k, n); });
  with(root, "", "replications",
       [&](auto k, auto& n) { c.replications = static_cast<int>(as_integer(k, n)); });
  with(root, "", "base_seed", [&](auto k, auto& n) {
    const long seed = as_integer(k, n);
    if (seed < 0) fail(k, n, "must be >= 0");
    c.base_seed = static_cast<std::uint64_t>(seed);
  });
  with(root, "", "laptop_depletion_policy", [&](auto k, auto& n) {
    const auto name = as_string(k, n);
    const auto policy = parse_depletion(name);
    if (!policy) fail(k, n, "expected \"start_generator\" or \"idle_wait\"");
    c.laptop_depletion = *policy;
  });

  if (const auto* t = subtable(root, "fleet")) read_fleet(*t, c);
  if (const auto* t = subtable(root, "battery")) read_battery(*t, c);
  if (const auto* t = subtable(root, "ups")) read_ups(*t, c);
  if (const auto* t = subtable(root, "generator")) read_generator(*t, c);
  if (const auto* t = subtable(root, "outage")) read_outage(*t, c, base_dir);

  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), path.parent_path().empty() ? "." : path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> config_fields(const ScenarioConfig& c) {
  std::vector<std::pair<std::string, std::string>> f;
  auto num = [](double v) { return format_number(v); };
  auto opt = [&](const std::optional<double>& v, const std::string& fallback) {
    return v ? num(*v) : fallback;
  };

  std::string archs;
  for (std::size_t i = 0; i < c.architectures.size(); ++i)
    archs += (i ? "," : "") + std::string(to_string(c.architectures[i]));
  f.emplace_back("architectures", archs);
  f.emplace_back("users", std::to_string(c.users));
  f.emplace_back("horizon_hours", std::to_string(c.horizon_hours));
  f.emplace_back("replications", std::to_string(c.replications));
  f.emplace_back("base_seed", std::to_string(c.base_seed));
  f.emplace_back("laptop_depletion_policy", std::string(to_string(c.laptop_depletion)));

  f.emplace_back("fleet.laptop_w", num(c.draws.laptop));
  f.emplace_back("fleet.desktop_w", num(c.draws.desktop));
  f.emplace_back("fleet.server_w", num(c.draws.server));
  f.emplace_back("fleet.switch_w", num(c.draws.sw));
  f.emplace_back("fleet.switches", std::to_string(c.switches));
  f.emplace_back("fleet.users_per_server", std::to_string(c.users_per_server));
  f.emplace_back("fleet.servers", std::to_string(anyware_fleet(c).count(DeviceClass::Server)));

  f.emplace_back("battery.laptop_backup_hours", num(c.laptop_backup_hours));
  f.emplace_back("battery.laptop_charge_w",
                 c.instant_recharge ? "instant" : num(c.laptop_charge_w.value_or(c.draws.laptop)));
  std::string overrides;
  for (std::size_t i = 0; i < c.laptop_backup_overrides.size(); ++i)
    overrides += (i ? "," : "") + num(c.laptop_backup_overrides[i]);
  f.emplace_back("battery.laptop_backup_overrides", overrides);
  f.emplace_back("battery.ups_backup_hours", num(c.ups_backup_hours));
  f.emplace_back("battery.ups_rated_load_w", num(ups_rated_load(c)));
  f.emplace_back("battery.ups_charge_w",
                 c.instant_recharge ? "instant"
                                    : opt(c.ups_charge_w, num(c.ups_backup_hours * ups_rated_load(c) / 3.0)));
  f.emplace_back("battery.instant_recharge", c.instant_recharge ? "true" : "false");

  f.emplace_back("ups.overhead_mode", std::string(to_string(c.ups_overhead_mode)));
  f.emplace_back("ups.overhead_coefficient", num(c.ups_overhead_coefficient));
  f.emplace_back("ups.overhead_fixed_w", num(c.ups_fixed_overhead_w));

  f.emplace_back("generator.overhead_factor", num(c.generator.overhead_factor));
  f.emplace_back("generator.fuel_rate", num(c.generator.fuel_rate));
  f.emplace_back("generator.recharges_batteries", c.generator_recharges_batteries ? "true" : "false");

  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BernoulliOutage>) {
          f.emplace_back("outage.policy", "bernoulli");
          f.emplace_back("outage.p", num(v.p));
        } else if constexpr (std::is_same_v<T, ScheduledOutage>) {
          f.emplace_back("outage.policy", "scheduled");
          std::string w;
          for (std::size_t i = 0; i < v.windows.size(); ++i)
            w += (i ? " " : "") + std::to_string(v.windows[i].first) + "-" +
                 std::to_string(v.windows[i].second);
          f.emplace_back("outage.windows", w);
        } else {
          f.emplace_back("outage.policy", "trace");
          f.emplace_back("outage.trace", c.trace_path);
        }
      },
      c.outage);
  return f;
}

}  // namespace anywaresim
