#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "senses/baselines.hpp"
#include "senses/config.hpp"
#include "senses/marl.hpp"
#include "senses/sim.hpp"

namespace senses {

// Documented JSON text form of a topology: entity arrays with every field.
// Key order is fixed, so equal topologies serialize byte-identically.
inline std::string topology_to_json(const Topology& topo) {
  using json = nlohmann::ordered_json;
  json root;
  root["rng_seed"] = topo.rng_seed;
  root["hub_server"] = topo.hub_server;
  root["grid"] = {{"width", topo.grid.width},
                  {"height", topo.grid.height},
                  {"resolution", topo.grid.resolution}};
  root["sensors"] = json::array();
  for (const Sensor& s : topo.sensors) {
    json j;
    j["id"] = s.id;
    j["x"] = s.position.x;
    j["y"] = s.position.y;
    j["r_max"] = s.r_max;
    j["adjustable"] = s.adjustable;
    j["voltage_u"] = s.voltage_u;
    j["current_a"] = s.current_a;
    j["current_b"] = s.current_b;
    j["bytes_per_cell"] = s.bytes_per_cell;
    j["owner_device"] = s.owner_device;
    j["link_rate_b1"] = s.link_rate_b1;
    j["link_power_p1"] = s.link_power_p1;
    j["fixed_l1"] = s.fixed_l1;
    root["sensors"].push_back(std::move(j));
  }
  root["devices"] = json::array();
  for (const ControlDevice& d : topo.devices) {
    json j;
    j["id"] = d.id;
    j["x"] = d.position.x;
    j["y"] = d.position.y;
    j["capacity_j"] = d.battery.capacity_j;
    j["soc_min"] = d.battery.soc_min;
    j["soc_max"] = d.battery.soc_max;
    j["compute_freq_f"] = d.compute_freq_f;
    j["energy_factor_k"] = d.energy_factor_k;
    j["server_links"] = json::array();
    for (const ServerLink& l : d.server_links)
      j["server_links"].push_back(
          {{"server", l.server}, {"rate_b", l.rate_b}, {"power_p", l.power_p}});
    root["devices"].push_back(std::move(j));
  }
  root["servers"] = json::array();
  for (const EdgeServer& e : topo.servers) {
    json j;
    j["id"] = e.id;
    j["compute_capacity_ec"] = e.compute_capacity_ec;
    j["storage_capacity_es"] = e.storage_capacity_es;
    j["peer_links"] = json::array();
    for (const PeerLink& l : e.peer_links)
      j["peer_links"].push_back(
          {{"server", l.server}, {"rate_b", l.rate_b}, {"power_p", l.power_p}});
    root["servers"].push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

namespace detail {

inline std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Write-then-rename so partially written outputs are never observed.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + tmp.string() + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline std::string hash_comment(const SimConfig& cfg) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "# config_hash=%016llx seed=%llu\n",
                static_cast<unsigned long long>(config_hash(cfg)),
                static_cast<unsigned long long>(cfg.seed));
  return buf;
}

}  // namespace detail

// Per-slot CSV: one row per slot with the energy breakdown, coverage, both
// duplication rates, then one soc column per control device.
inline std::string slots_csv(const SimConfig& cfg, const std::string& policy,
                             const EpisodeLog& log, std::size_t num_devices) {
  std::ostringstream out;
  out << detail::hash_comment(cfg);
  out << "slot,policy,total_J,sensing_J,tran1_J,comp_J,tran2_J,tran3_J,"
         "coverage,dup_rate_device,dup_rate_server";
  for (std::size_t d = 0; d < num_devices; ++d) out << ",soc_" << d;
  out << "\n";
  for (const SlotRecord& rec : log.slots) {
    out << rec.slot << "," << policy << "," << detail::fmt_g(rec.energy.total_j)
        << "," << detail::fmt_g(rec.energy.sensing_j) << ","
        << detail::fmt_g(rec.energy.tran1_j) << ","
        << detail::fmt_g(rec.energy.comp_j) << ","
        << detail::fmt_g(rec.energy.tran2_j) << ","
        << detail::fmt_g(rec.energy.tran3_j) << "," << detail::fmt_g(rec.coverage)
        << "," << detail::fmt_g(rec.dup_device) << ","
        << detail::fmt_g(rec.dup_server);
    for (double soc : rec.soc) out << "," << detail::fmt_g(soc);
    out << "\n";
  }
  return out.str();
}

inline std::string train_csv(const SimConfig& cfg,
                             const std::vector<TrainEpisodeStat>& log) {
  std::ostringstream out;
  out << detail::hash_comment(cfg);
  out << "episode,mean_reward,loss_actor,loss_critic\n";
  for (const TrainEpisodeStat& s : log)
    out << s.episode << "," << detail::fmt_g(s.mean_reward) << ","
        << detail::fmt_g(s.actor_loss) << "," << detail::fmt_g(s.critic_loss)
        << "\n";
  return out.str();
}

// SimParams assembled from the config plus topology-derived normalizers.
inline SimParams make_sim_params(const SimConfig& cfg, const Topology& topo) {
  SimParams p;
  p.slot_seconds = cfg.slot_seconds;
  p.coverage_target = cfg.coverage_target;
  p.radius_step = cfg.marl.delta;
  p.energy_scale = full_blast_energy(topo, cfg.slot_seconds);
  if (p.energy_scale <= 0) p.energy_scale = 1.0;
  p.inference_surcharge_j = cfg.inference_surcharge_j;
  p.load_surcharge = cfg.load_surcharge;
  p.raw_inflation = cfg.raw_inflation;
  p.compression_ratio = cfg.compression_ratio;
  p.l2_override = cfg.l2_override;
  p.offload_soc = cfg.offload_soc;
  p.weak_threshold = cfg.marl.weak_threshold;
  p.rescue_soc = cfg.marl.rescue_soc;
  p.reward = cfg.reward;
  p.horizon = cfg.horizon;
  return p;
}

struct PolicyRun {
  PolicyKind kind;
  EpisodeLog log;
  EpisodeSummary summary;
};

inline PolicyRun run_policy(PolicyKind kind, const SimConfig& cfg,
                            const Topology& topo, const SimParams& base,
                            const PolicyParams* trained) {
  PolicyRun run;
  run.kind = kind;
  const SimParams params = params_for_policy(kind, base);
  const PolicyFn policy = make_policy(kind, topo, params, trained);
  run.log = run_episode(policy, topo, params, cfg.horizon, cfg.seed);
  run.summary = summarize(run.log, cfg.voltage_u, cfg.slot_seconds);
  return run;
}

// Device-energy totals over a common slot window, for like-for-like policy
// comparison when episodes end at different slots.
inline double device_energy_over_window(const EpisodeLog& log, int window) {
  double total = 0;
  for (int t = 0; t < window && t < static_cast<int>(log.slots.size()); ++t)
    for (double d : log.slots[t].device_drain_j) total += d;
  return total;
}

inline std::string summary_json(const SimConfig& cfg,
                                const std::vector<PolicyRun>& runs) {
  using json = nlohmann::ordered_json;
  json root;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  root["config_hash"] = buf;
  root["seed"] = cfg.seed;
  root["horizon"] = cfg.horizon;
  int window = cfg.horizon;
  for (const PolicyRun& r : runs)
    window = std::min(window, static_cast<int>(r.log.slots.size()));
  root["common_window_slots"] = window;
  root["policies"] = json::object();
  for (const PolicyRun& r : runs) {
    const Duration dur = max_operational_duration(r.log);
    json j;
    j["total_energy_J"] = r.summary.total_energy_j;
    j["device_energy_J"] = r.summary.device_energy_j;
    j["device_energy_common_window_J"] = device_energy_over_window(r.log, window);
    j["max_operational_duration"] = dur.slots;
    j["duration_censored"] = dur.censored;
    j["mean_dup_rate_device"] = r.summary.mean_dup_device;
    j["mean_dup_rate_server"] = r.summary.mean_dup_server;
    j["mean_coverage"] = r.summary.mean_coverage;
    j["current_proxy_mean"] = r.summary.current_proxy_mean;
    j["current_proxy_stddev"] = r.summary.current_proxy_stddev;
    root["policies"][policy_name(r.kind)] = std::move(j);
  }
  return root.dump(2) + "\n";
}

// ---- commands ----

inline void cmd_train(const SimConfig& cfg, const std::filesystem::path& out_dir) {
  if (cfg.policy != PolicyKind::Senses)
    throw ValidationError("train requires policy = senses");
  std::filesystem::create_directories(out_dir);
  const Topology topo = build_topology(cfg, cfg.seed);
  const SimParams params = make_sim_params(cfg, topo);
  const TrainResult result = train(topo, params, cfg.marl, cfg.seed);
  save_policy_params(result.params, (out_dir / "policy.params").string());
  detail::write_file_atomic(out_dir / "train.csv", train_csv(cfg, result.log));
  detail::write_file_atomic(out_dir / "topology.json", topology_to_json(topo));
}

inline void cmd_simulate(const SimConfig& cfg, const std::filesystem::path& out_dir,
                         const std::string& params_path) {
  std::filesystem::create_directories(out_dir);
  const Topology topo = build_topology(cfg, cfg.seed);
  const SimParams base = make_sim_params(cfg, topo);
  PolicyParams trained;
  const PolicyParams* trained_ptr = nullptr;
  if (cfg.policy == PolicyKind::Senses || cfg.policy == PolicyKind::SensesRe) {
    if (params_path.empty())
      throw MissingParams("simulate with a learned policy needs --params");
    trained = load_policy_params(params_path);
    trained_ptr = &trained;
  }
  const PolicyRun run = run_policy(cfg.policy, cfg, topo, base, trained_ptr);
  const std::string name = policy_name(cfg.policy);
  detail::write_file_atomic(out_dir / ("slots_" + name + ".csv"),
                            slots_csv(cfg, name, run.log, topo.devices.size()));
  detail::write_file_atomic(out_dir / "summary.json", summary_json(cfg, {run}));
}

inline void cmd_compare(const SimConfig& cfg, const std::vector<PolicyKind>& kinds,
                        const std::filesystem::path& out_dir,
                        const std::string& params_path) {
  std::filesystem::create_directories(out_dir);
  const Topology topo = build_topology(cfg, cfg.seed);
  const SimParams base = make_sim_params(cfg, topo);
  PolicyParams trained;
  const PolicyParams* trained_ptr = nullptr;
  for (PolicyKind k : kinds)
    if (k == PolicyKind::Senses || k == PolicyKind::SensesRe) {
      if (params_path.empty())
        throw MissingParams("compare with a learned policy needs --params");
      trained = load_policy_params(params_path);
      trained_ptr = &trained;
      break;
    }
  std::vector<PolicyRun> runs;
  for (PolicyKind k : kinds) {
    PolicyRun run = run_policy(k, cfg, topo, base, trained_ptr);
    detail::write_file_atomic(
        out_dir / (std::string("slots_") + policy_name(k) + ".csv"),
        slots_csv(cfg, policy_name(k), run.log, topo.devices.size()));
    runs.push_back(std::move(run));
  }
  detail::write_file_atomic(out_dir / "summary.json", summary_json(cfg, runs));
}

}  // namespace senses
