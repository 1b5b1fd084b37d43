#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "senses/common.hpp"
#include "senses/hyperparams.hpp"

namespace senses {

enum class PolicyKind { Senses, SensesRe, Comp, Load };

inline const char* policy_name(PolicyKind k) {
  switch (k) {
    case PolicyKind::Senses: return "senses";
    case PolicyKind::SensesRe: return "senses-re";
    case PolicyKind::Comp: return "comp";
    case PolicyKind::Load: return "load";
  }
  return "?";
}

inline PolicyKind parse_policy(const std::string& s) {
  if (s == "senses") return PolicyKind::Senses;
  if (s == "senses-re") return PolicyKind::SensesRe;
  if (s == "comp") return PolicyKind::Comp;
  if (s == "load") return PolicyKind::Load;
  throw ValidationError("unknown policy '" + s +
                        "' (expected senses|senses-re|comp|load)");
}

// Full experiment configuration. Flat key = value text file with dotted
// section prefixes; every field below has a config key of the same shape.
struct SimConfig {
  // topology.*
  int servers = 5;
  int devices = 28;
  int sensors = 30;
  int adjustable = 24;
  int max_attempts = 64;
  // area.*
  double width = 100.0;
  double height = 100.0;
  int resolution = 1;
  // sensor.*
  double radius_min = 15.0;
  double radius_max = 25.0;
  double bytes_per_cell = 2.0;
  double voltage_u = 5.0;
  double current_a = 0.01;    // idle draw, amps
  double current_b = 0.0004;  // amps per square area unit
  double link_rate_b1 = 1000.0;  // bytes/s sensor -> device
  double link_power_p1 = 0.5;    // watts
  // device.*
  double capacity_min_j = 2000.0;
  double capacity_max_j = 4000.0;
  double soc_min = 0.05;
  double soc_max = 1.0;
  double compute_freq = 1000.0;     // cycles/s
  double energy_factor_k = 1e-9;    // J*s^2/byte
  double link_rate_b2_min = 4000.0;  // bytes/s device -> server
  double link_rate_b2_max = 4000.0;
  double link_power_p2_min = 2.0;
  double link_power_p2_max = 2.0;
  // server.*
  double peer_rate_b3 = 8000.0;
  double peer_power_p3 = 4.0;
  double compute_capacity = 1e9;
  double storage_capacity = 1e12;
  double inference_surcharge_j = 0.05;  // per server per slot, senses only
  double load_surcharge = 0.05;         // added to W^j while senses runs
  // dedup.*
  double l1_fraction = 0.6;   // fixed sensor inner zone, fraction of r_max
  double l2_override = -1.0;  // <0 keeps the (r_max + l1)/2 default
  // sim.*
  double coverage_target = 0.95;
  double slot_seconds = 1.0;
  int horizon = 200;
  // baseline.*
  double offload_soc = 0.3;
  double raw_inflation = 1.2;
  double compression_ratio = 1.0;
  // marl.* / reward.*
  Hyperparams marl;
  RewardWeights reward;
  // top level
  PolicyKind policy = PolicyKind::Senses;
  std::uint64_t seed = 42;
};

namespace detail {

struct ConfigField {
  std::function<void(SimConfig&, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;
};

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ParseError("value for key '" + key + "' is not a number: '" + v + "'");
  }
}

inline long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long n = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return n;
  } catch (const std::exception&) {
    throw ParseError("value for key '" + key + "' is not an integer: '" + v + "'");
  }
}

inline const std::map<std::string, ConfigField>& config_schema() {
  static const std::map<std::string, ConfigField> schema = [] {
    std::map<std::string, ConfigField> m;
    auto add_d = [&m](const std::string& key, double SimConfig::* f) {
      m[key] = ConfigField{
          [key, f](SimConfig& c, const std::string& v) { c.*f = to_double(key, v); },
          [f](const SimConfig& c) { return fmt_double(c.*f); }};
    };
    auto add_i = [&m](const std::string& key, int SimConfig::* f) {
      m[key] = ConfigField{
          [key, f](SimConfig& c, const std::string& v) {
            c.*f = static_cast<int>(to_int(key, v));
          },
          [f](const SimConfig& c) { return std::to_string(c.*f); }};
    };
    auto add_hd = [&m](const std::string& key, double Hyperparams::* f) {
      m[key] = ConfigField{
          [key, f](SimConfig& c, const std::string& v) { c.marl.*f = to_double(key, v); },
          [f](const SimConfig& c) { return fmt_double(c.marl.*f); }};
    };
    auto add_hi = [&m](const std::string& key, int Hyperparams::* f) {
      m[key] = ConfigField{
          [key, f](SimConfig& c, const std::string& v) {
            c.marl.*f = static_cast<int>(to_int(key, v));
          },
          [f](const SimConfig& c) { return std::to_string(c.marl.*f); }};
    };
    auto add_rw = [&m](const std::string& key, double RewardWeights::* f) {
      m[key] = ConfigField{
          [key, f](SimConfig& c, const std::string& v) { c.reward.*f = to_double(key, v); },
          [f](const SimConfig& c) { return fmt_double(c.reward.*f); }};
    };

    add_i("topology.servers", &SimConfig::servers);
    add_i("topology.devices", &SimConfig::devices);
    add_i("topology.sensors", &SimConfig::sensors);
    add_i("topology.adjustable", &SimConfig::adjustable);
    add_i("topology.max_attempts", &SimConfig::max_attempts);
    add_d("area.width", &SimConfig::width);
    add_d("area.height", &SimConfig::height);
    add_i("area.resolution", &SimConfig::resolution);
    add_d("sensor.radius_min", &SimConfig::radius_min);
    add_d("sensor.radius_max", &SimConfig::radius_max);
    add_d("sensor.bytes_per_cell", &SimConfig::bytes_per_cell);
    add_d("sensor.voltage_u", &SimConfig::voltage_u);
    add_d("sensor.current_a", &SimConfig::current_a);
    add_d("sensor.current_b", &SimConfig::current_b);
    add_d("sensor.link_rate_b1", &SimConfig::link_rate_b1);
    add_d("sensor.link_power_p1", &SimConfig::link_power_p1);
    add_d("device.capacity_min_j", &SimConfig::capacity_min_j);
    add_d("device.capacity_max_j", &SimConfig::capacity_max_j);
    add_d("device.soc_min", &SimConfig::soc_min);
    add_d("device.soc_max", &SimConfig::soc_max);
    add_d("device.compute_freq", &SimConfig::compute_freq);
    add_d("device.energy_factor_k", &SimConfig::energy_factor_k);
    add_d("device.link_rate_b2_min", &SimConfig::link_rate_b2_min);
    add_d("device.link_rate_b2_max", &SimConfig::link_rate_b2_max);
    add_d("device.link_power_p2_min", &SimConfig::link_power_p2_min);
    add_d("device.link_power_p2_max", &SimConfig::link_power_p2_max);
    add_d("server.peer_rate_b3", &SimConfig::peer_rate_b3);
    add_d("server.peer_power_p3", &SimConfig::peer_power_p3);
    add_d("server.compute_capacity", &SimConfig::compute_capacity);
    add_d("server.storage_capacity", &SimConfig::storage_capacity);
    add_d("server.inference_surcharge_j", &SimConfig::inference_surcharge_j);
    add_d("server.load_surcharge", &SimConfig::load_surcharge);
    add_d("dedup.l1_fraction", &SimConfig::l1_fraction);
    add_d("dedup.l2_override", &SimConfig::l2_override);
    add_d("sim.coverage_target", &SimConfig::coverage_target);
    add_d("sim.slot_seconds", &SimConfig::slot_seconds);
    add_i("sim.horizon", &SimConfig::horizon);
    add_d("baseline.offload_soc", &SimConfig::offload_soc);
    add_d("baseline.raw_inflation", &SimConfig::raw_inflation);
    add_d("baseline.compression_ratio", &SimConfig::compression_ratio);
    add_hd("marl.alpha", &Hyperparams::alpha);
    add_hd("marl.gamma", &Hyperparams::gamma);
    add_hd("marl.lambda", &Hyperparams::lambda);
    add_hd("marl.epsilon", &Hyperparams::clip_eps);
    add_hi("marl.batch_size", &Hyperparams::batch_size);
    add_hi("marl.epochs", &Hyperparams::epochs);
    m["marl.step_max"] = ConfigField{
        [](SimConfig& c, const std::string& v) {
          c.marl.step_max = to_int("marl.step_max", v);
        },
        [](const SimConfig& c) { return std::to_string(c.marl.step_max); }};
    add_hi("marl.episodes", &Hyperparams::episodes);
    add_hi("marl.train_horizon", &Hyperparams::train_horizon);
    add_hd("marl.delta", &Hyperparams::delta);
    add_hd("marl.weak_threshold", &Hyperparams::weak_threshold);
    add_hd("marl.rescue_soc", &Hyperparams::rescue_soc);
    add_hi("marl.hidden1", &Hyperparams::hidden1);
    add_hi("marl.hidden2", &Hyperparams::hidden2);
    add_rw("reward.w_energy", &RewardWeights::energy);
    add_rw("reward.w_load", &RewardWeights::load);
    add_rw("reward.w_alive", &RewardWeights::alive);
    add_rw("reward.w_coverage", &RewardWeights::coverage);
    m["policy"] = ConfigField{
        [](SimConfig& c, const std::string& v) { c.policy = parse_policy(v); },
        [](const SimConfig& c) { return policy_name(c.policy); }};
    m["seed"] = ConfigField{
        [](SimConfig& c, const std::string& v) {
          c.seed = static_cast<std::uint64_t>(to_int("seed", v));
        },
        [](const SimConfig& c) { return std::to_string(c.seed); }};
    return m;
  }();
  return schema;
}

inline std::string trim(std::string s) {
  auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && sp(s.front())) s.erase(s.begin());
  while (!s.empty() && sp(s.back())) s.pop_back();
  return s;
}

}  // namespace detail

// Applies one `key = value` assignment. Throws ValidationError for unknown
// keys and ParseError for unparseable values.
inline void apply_config_entry(SimConfig& cfg, const std::string& key,
                               const std::string& value) {
  const auto& schema = detail::config_schema();
  auto it = schema.find(key);
  if (it == schema.end()) throw ValidationError("unknown config key '" + key + "'");
  it->second.set(cfg, value);
}

inline void validate_config(const SimConfig& c) {
  auto fail = [](const std::string& msg) { throw ValidationError(msg); };
  if (c.servers <= 0) fail("topology.servers must be > 0");
  if (c.devices <= 0) fail("topology.devices must be > 0");
  if (c.sensors <= 0) fail("topology.sensors must be > 0");
  if (c.adjustable < 0 || c.adjustable > c.sensors)
    fail("topology.adjustable must be in [0, topology.sensors]");
  if (c.devices < c.servers) fail("topology.devices must be >= topology.servers");
  if (c.width <= 0 || c.height <= 0) fail("area dimensions must be > 0");
  if (c.resolution < 1) fail("area.resolution must be >= 1");
  if (!(c.radius_min > 0 && c.radius_min <= c.radius_max))
    fail("sensor radius range must satisfy 0 < radius_min <= radius_max");
  if (c.radius_max > std::min(c.width, c.height) / 2.0)
    fail("sensor.radius_max must be <= min(width, height)/2");
  if (c.bytes_per_cell <= 0) fail("sensor.bytes_per_cell must be > 0");
  if (c.voltage_u <= 0) fail("sensor.voltage_u must be > 0");
  if (c.link_rate_b1 <= 0 || c.link_power_p1 < 0) fail("sensor link parameters invalid");
  if (!(c.capacity_min_j > 0 && c.capacity_min_j <= c.capacity_max_j))
    fail("device capacity range invalid");
  if (!(c.soc_min >= 0 && c.soc_min < c.soc_max && c.soc_max <= 1.0))
    fail("device soc bounds must satisfy 0 <= soc_min < soc_max <= 1");
  if (c.compute_freq <= 0 || c.energy_factor_k <= 0) fail("device compute parameters invalid");
  if (!(c.link_rate_b2_min > 0 && c.link_rate_b2_min <= c.link_rate_b2_max))
    fail("device link rate range invalid");
  if (!(c.link_power_p2_min >= 0 && c.link_power_p2_min <= c.link_power_p2_max))
    fail("device link power range invalid");
  if (c.peer_rate_b3 <= 0 || c.peer_power_p3 < 0) fail("server peer link parameters invalid");
  if (c.compute_capacity <= 0 || c.storage_capacity <= 0) fail("server capacities must be > 0");
  if (!(c.l1_fraction > 0 && c.l1_fraction < 1)) fail("dedup.l1_fraction must be in (0, 1)");
  if (!(c.coverage_target > 0 && c.coverage_target <= 1)) fail("sim.coverage_target must be in (0, 1]");
  if (c.slot_seconds <= 0) fail("sim.slot_seconds must be > 0");
  if (c.horizon < 0) fail("sim.horizon must be >= 0");
  if (!(c.offload_soc >= 0 && c.offload_soc <= 1)) fail("baseline.offload_soc must be in [0, 1]");
  if (c.raw_inflation < 1.0) fail("baseline.raw_inflation must be >= 1");
  if (!(c.compression_ratio > 0 && c.compression_ratio <= 1))
    fail("baseline.compression_ratio must be in (0, 1]");
  const Hyperparams& h = c.marl;
  if (h.alpha <= 0) fail("marl.alpha must be > 0");
  if (!(h.gamma >= 0 && h.gamma <= 1)) fail("marl.gamma must be in [0, 1]");
  if (!(h.lambda >= 0 && h.lambda <= 1)) fail("marl.lambda must be in [0, 1]");
  if (!(h.clip_eps >= 0 && h.clip_eps <= 1)) fail("marl.epsilon must be in [0, 1]");
  if (h.batch_size <= 0) fail("marl.batch_size must be > 0");
  if (h.epochs <= 0) fail("marl.epochs must be > 0");
  if (h.step_max < 0) fail("marl.step_max must be >= 0");
  if (h.episodes < 0) fail("marl.episodes must be >= 0");
  if (h.train_horizon <= 0) fail("marl.train_horizon must be > 0");
  if (h.delta <= 0) fail("marl.delta must be > 0");
  if (!(h.weak_threshold > 0 && h.weak_threshold <= 1)) fail("marl.weak_threshold must be in (0, 1]");
  if (!(h.rescue_soc >= 0 && h.rescue_soc <= 1)) fail("marl.rescue_soc must be in [0, 1]");
  if (h.hidden1 <= 0 || h.hidden2 <= 0) fail("marl hidden layer sizes must be > 0");
  if (c.reward.energy < 0 || c.reward.load < 0 || c.reward.alive < 0 || c.reward.coverage < 0)
    fail("reward weights must be >= 0");
}

// Parses `key = value` lines. '#' starts a comment, blank lines are skipped.
// `overrides` are applied after the file, in order, so flags win.
inline SimConfig parse_config(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& overrides = {}) {
  SimConfig cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = detail::trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
      std::string key = detail::trim(line.substr(0, eq));
      std::string value = detail::trim(line.substr(eq + 1));
      if (key.empty())
        throw ParseError(path + ":" + std::to_string(lineno) + ": empty key");
      try {
        apply_config_entry(cfg, key, value);
      } catch (const ParseError& e) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
      } catch (const ValidationError& e) {
        throw ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  for (const auto& [k, v] : overrides) apply_config_entry(cfg, k, v);
  validate_config(cfg);
  return cfg;
}

// Canonical text form: every key in schema order. Basis for the config hash
// recorded in output files.
inline std::string canonical_config(const SimConfig& cfg) {
  std::ostringstream out;
  for (const auto& [key, field] : detail::config_schema())
    out << key << " = " << field.get(cfg) << "\n";
  return out.str();
}

inline std::uint64_t config_hash(const SimConfig& cfg) {
  return fnv1a64(canonical_config(cfg));
}

}  // namespace senses
