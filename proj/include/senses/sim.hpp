#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "senses/dedup.hpp"
#include "senses/energy.hpp"
#include "senses/hyperparams.hpp"
#include "senses/netmodel.hpp"

namespace senses {

enum class RadiusAction : int { Decrease = 0, Keep = 1, Increase = 2 };

// How redundant cell observations are handled downstream of sensing.
//   Staged:     fixed sensors emit priority batches against the cells the
//               servers already hold this slot.
//   Retain:     everything sensed is transmitted and stored.
//   ServerHash: everything is transmitted; each server hash-dedups arrivals
//               before storing/forwarding.
enum class DedupMode { Staged, Retain, ServerHash };

// One slot's worth of policy output.
struct SlotDecision {
  std::vector<RadiusAction> actions;   // per sensor; ignored for fixed sensors
  DedupMode dedup = DedupMode::Retain;
  std::vector<std::uint8_t> offload;   // per device; empty = no offloading
};

// Everything the engine needs besides the topology. Built once per run.
struct SimParams {
  double slot_seconds = 1.0;
  double coverage_target = 0.95;
  double radius_step = 1.0;
  double energy_scale = 1.0;  // normalizer for the reward's energy term
  bool inference_surcharge = false;
  double inference_surcharge_j = 0.05;
  double load_surcharge = 0.05;
  double raw_inflation = 1.2;
  double compression_ratio = 1.0;
  double l2_override = -1.0;
  double offload_soc = 0.3;
  double weak_threshold = 0.85;
  double rescue_soc = 0.10;
  RewardWeights reward;
  int horizon = 200;
};

// Mutable per-slot state. One instance per episode; never shared.
struct SimState {
  int slot = 0;
  std::vector<double> radii;                  // per sensor
  std::vector<BatteryState> batteries;        // per device
  std::vector<std::uint8_t> alive;            // per device
  std::vector<double> device_loads;           // W^n, normalized
  std::vector<double> server_loads;           // W^j, normalized
  std::vector<std::uint8_t> region_complete;  // per cell, reset each slot
};

inline SimState initial_state(const Topology& topo) {
  SimState st;
  st.radii.resize(topo.sensors.size());
  for (std::size_t i = 0; i < topo.sensors.size(); ++i)
    st.radii[i] = topo.sensors[i].r_max;
  st.batteries.reserve(topo.devices.size());
  for (const ControlDevice& d : topo.devices) st.batteries.push_back(d.battery);
  st.alive.assign(topo.devices.size(), 1);
  st.device_loads.assign(topo.devices.size(), 0.0);
  st.server_loads.assign(topo.servers.size(), 0.0);
  st.region_complete.assign(topo.grid.cell_count(), 0);
  return st;
}

// Fixed sensors always operate at r_max; adjustable ones at their current
// setting.
inline std::vector<double> effective_radii(const Topology& topo, const SimState& st) {
  std::vector<double> r(st.radii);
  for (std::size_t i = 0; i < topo.sensors.size(); ++i)
    if (!topo.sensors[i].adjustable) r[i] = topo.sensors[i].r_max;
  return r;
}

// Per-slot reward for one agent: penalize energy and its server's load,
// credit surviving devices, penalize any coverage shortfall.
inline double reward_value(const EnergyBreakdown& breakdown, double server_load,
                           int alive_count, int device_count, double coverage,
                           const RewardWeights& w, double energy_scale,
                           double coverage_target) {
  const double energy_term = breakdown.total_j / energy_scale;
  const double alive_frac =
      device_count > 0 ? static_cast<double>(alive_count) / device_count : 0.0;
  const double deficit = std::max(0.0, coverage_target - coverage);
  return -w.energy * energy_term - w.load * server_load + w.alive * alive_frac -
         w.coverage * deficit;
}

struct SlotMetrics {
  EnergyBreakdown energy;
  double coverage = 0;
  double dup_device = 0;
  double dup_server = 0;
  std::vector<double> device_drain_j;
  std::vector<double> agent_rewards;  // per server
  double sensed_bytes = 0;
  double uplink_bytes = 0;
  int alive_devices = 0;
};

namespace detail {

// W^n normalizers: each device's maximum per-slot owned bytes (all its
// sensors at r_max); W^j: per server over its linked devices.
struct LoadNormalizers {
  std::vector<double> device_max_bytes;
  std::vector<double> server_max_bytes;
};

inline LoadNormalizers load_normalizers(const Topology& topo) {
  LoadNormalizers n;
  n.device_max_bytes.assign(topo.devices.size(), 0.0);
  n.server_max_bytes.assign(topo.servers.size(), 0.0);
  for (const Sensor& s : topo.sensors)
    n.device_max_bytes[s.owner_device] += sensed_data_size(s, s.r_max, topo.grid);
  for (const ControlDevice& d : topo.devices)
    n.server_max_bytes[d.server_links.front().server] += n.device_max_bytes[d.id];
  return n;
}

}  // namespace detail

// Advances one slot: apply radius actions, sense, run controller- and
// server-level dedup, route to the hub, account energy, drain batteries,
// update death flags and loads.
inline SlotMetrics step(SimState& st, const SlotDecision& decision,
                        const Topology& topo, const SimParams& params) {
  const AreaGrid& grid = topo.grid;
  const std::size_t num_sensors = topo.sensors.size();
  const std::size_t num_devices = topo.devices.size();
  const std::size_t num_servers = topo.servers.size();

  // 1. radius actions, clamped to [0, r_max]
  for (std::size_t i = 0; i < num_sensors; ++i) {
    const Sensor& s = topo.sensors[i];
    if (!s.adjustable || !st.alive[s.owner_device]) continue;
    double r = st.radii[i];
    if (i < decision.actions.size()) {
      if (decision.actions[i] == RadiusAction::Decrease) r -= params.radius_step;
      if (decision.actions[i] == RadiusAction::Increase) r += params.radius_step;
    }
    st.radii[i] = std::clamp(r, 0.0, s.r_max);
  }

  // 2. sensing
  const std::vector<double> radii = effective_radii(topo, st);
  std::vector<std::vector<CellIndex>> sensed(num_sensors);
  SlotMetrics m;
  for (std::size_t i = 0; i < num_sensors; ++i) {
    const Sensor& s = topo.sensors[i];
    if (!st.alive[s.owner_device]) continue;
    sensed[i] = covered_cells(s, radii[i], grid);
    m.sensed_bytes += s.bytes_per_cell * static_cast<double>(sensed[i].size());
  }

  // 3. controller-level flow: what each datum puts on the device -> server
  // link. Fixed sensors under staged dedup emit only cells the servers do
  // not already hold this slot.
  std::fill(st.region_complete.begin(), st.region_complete.end(), 0);
  LinkSelection sel;
  sel.routes.resize(num_sensors);
  std::vector<std::vector<std::pair<std::size_t, std::vector<CellIndex>>>>
      arrivals(num_servers);  // per server, (sensor, cells) in emission order

  auto emit = [&](std::size_t i, std::vector<CellIndex> cells) {
    const Sensor& s = topo.sensors[i];
    const ControlDevice& dev = topo.devices[s.owner_device];
    const int server = dev.server_links.front().server;
    const double bytes = s.bytes_per_cell * static_cast<double>(cells.size());
    DatumRoute& route = sel.routes[i];
    route.server = server;
    route.comp_bytes = bytes;
    route.tran2_bytes = bytes;
    for (CellIndex c : cells) st.region_complete[static_cast<std::size_t>(c)] = 1;
    arrivals[server].emplace_back(i, std::move(cells));
  };

  if (decision.dedup == DedupMode::Staged) {
    for (std::size_t i = 0; i < num_sensors; ++i)
      if (topo.sensors[i].adjustable && st.alive[topo.sensors[i].owner_device])
        emit(i, sensed[i]);
    for (std::size_t i = 0; i < num_sensors; ++i) {
      const Sensor& s = topo.sensors[i];
      if (s.adjustable || !st.alive[s.owner_device]) continue;
      PriorityPartition part = partition(s, grid, params.l2_override);
      std::vector<CellIndex> emitted;
      for (StagedBatch& batch : staged_transmit(part, st.region_complete, s.bytes_per_cell))
        emitted.insert(emitted.end(), batch.cells.begin(), batch.cells.end());
      std::sort(emitted.begin(), emitted.end());
      emit(i, std::move(emitted));
    }
  } else {
    for (std::size_t i = 0; i < num_sensors; ++i)
      if (st.alive[topo.sensors[i].owner_device]) emit(i, sensed[i]);
  }

  // 4. server-level dedup and hub forwarding
  std::vector<std::int32_t> stored_count(grid.cell_count(), 0);
  std::int64_t stored_total = 0;
  for (std::size_t j = 0; j < num_servers; ++j) {
    std::vector<std::vector<CellIndex>> stored;
    if (decision.dedup == DedupMode::ServerHash) {
      std::vector<std::vector<CellIndex>> batches;
      batches.reserve(arrivals[j].size());
      for (auto& [sensor_idx, cells] : arrivals[j]) batches.push_back(cells);
      stored = hash_dedup_kept(batches, st.slot);
    }
    for (std::size_t b = 0; b < arrivals[j].size(); ++b) {
      const auto& [sensor_idx, cells] = arrivals[j][b];
      const Sensor& s = topo.sensors[sensor_idx];
      DatumRoute& route = sel.routes[sensor_idx];
      const std::vector<CellIndex>& keep =
          decision.dedup == DedupMode::ServerHash ? stored[b] : cells;
      for (CellIndex c : keep) {
        ++stored_count[c];
        ++stored_total;
      }
      route.hub_bytes =
          decision.dedup == DedupMode::ServerHash
              ? s.bytes_per_cell * static_cast<double>(keep.size()) *
                    params.compression_ratio
              : route.tran2_bytes;
      if (static_cast<int>(j) != topo.hub_server && route.hub_bytes > 0)
        route.hub_path = {{static_cast<int>(j), topo.hub_server}};
    }
  }

  // 5. compute offloading: the device ships raw bytes and skips formatting
  for (std::size_t i = 0; i < num_sensors; ++i) {
    const Sensor& s = topo.sensors[i];
    if (!sel.routes[i].server.has_value()) continue;
    const int d = s.owner_device;
    if (d < static_cast<int>(decision.offload.size()) && decision.offload[d] &&
        st.alive[d]) {
      sel.routes[i].comp_at_server = true;
      sel.routes[i].tran2_bytes *= params.raw_inflation;
    }
  }
  for (std::size_t i = 0; i < num_sensors; ++i) m.uplink_bytes += sel.routes[i].tran2_bytes;

  // 6. energy
  SlotLedger ledger = slot_energy_ledger(topo, st.alive, radii, sel, params.slot_seconds);
  m.energy = ledger.breakdown;
  if (params.inference_surcharge) {
    const double surcharge = params.inference_surcharge_j * static_cast<double>(num_servers);
    m.energy.comp_j += surcharge;
    m.energy.total_j += surcharge;
  }
  m.device_drain_j = ledger.device_drain_j;

  // 7. battery drain and deaths
  for (std::size_t d = 0; d < num_devices; ++d) {
    if (!st.alive[d]) continue;
    st.batteries[d] = drain_battery(st.batteries[d], m.device_drain_j[d]);
    if (st.batteries[d].dead) st.alive[d] = 0;
  }
  m.alive_devices = static_cast<int>(
      std::count(st.alive.begin(), st.alive.end(), std::uint8_t{1}));

  // 8. loads
  const detail::LoadNormalizers norm = detail::load_normalizers(topo);
  std::vector<double> owned_bytes(num_devices, 0.0), recv_bytes(num_servers, 0.0);
  for (std::size_t i = 0; i < num_sensors; ++i) {
    const Sensor& s = topo.sensors[i];
    owned_bytes[s.owner_device] += s.bytes_per_cell * static_cast<double>(sensed[i].size());
    if (sel.routes[i].server.has_value())
      recv_bytes[*sel.routes[i].server] += sel.routes[i].tran2_bytes;
  }
  for (std::size_t d = 0; d < num_devices; ++d)
    st.device_loads[d] =
        st.alive[d] && norm.device_max_bytes[d] > 0
            ? std::clamp(owned_bytes[d] / norm.device_max_bytes[d], 0.0, 1.0)
            : 0.0;
  for (std::size_t j = 0; j < num_servers; ++j) {
    double load = norm.server_max_bytes[j] > 0
                      ? recv_bytes[j] / norm.server_max_bytes[j]
                      : 0.0;
    if (params.inference_surcharge) load += params.load_surcharge;
    st.server_loads[j] = std::clamp(load, 0.0, 1.0);
  }

  // 9. coverage and duplication metrics
  std::int64_t sensed_total = 0, sensed_union = 0;
  {
    std::vector<std::int32_t> count(grid.cell_count(), 0);
    for (std::size_t i = 0; i < num_sensors; ++i)
      for (CellIndex c : sensed[i]) {
        sensed_total += 1;
        sensed_union += (count[c]++ == 0);
      }
  }
  m.coverage = grid.cell_count() > 0
                   ? static_cast<double>(sensed_union) / grid.cell_count()
                   : 0.0;
  m.dup_device = sensed_total > 0
                     ? static_cast<double>(sensed_total - sensed_union) / sensed_total
                     : 0.0;
  std::int64_t stored_unique = 0;
  for (std::int32_t c : stored_count) stored_unique += (c > 0);
  m.dup_server = stored_total > 0
                     ? static_cast<double>(stored_total - stored_unique) / stored_total
                     : 0.0;

  // 10. per-agent rewards
  m.agent_rewards.resize(num_servers);
  for (std::size_t j = 0; j < num_servers; ++j)
    m.agent_rewards[j] = reward_value(
        m.energy, st.server_loads[j], m.alive_devices,
        static_cast<int>(num_devices), m.coverage, params.reward,
        params.energy_scale, params.coverage_target);

  ++st.slot;
  return m;
}

using PolicyFn =
    std::function<SlotDecision(const Topology&, const SimState&, Rng&)>;

enum class EndReason { CoverageLost, HorizonReached };

struct SlotRecord {
  int slot = 0;
  EnergyBreakdown energy;
  double coverage = 0;
  double dup_device = 0;
  double dup_server = 0;
  std::vector<double> soc;             // per device, post-drain
  std::vector<double> device_drain_j;  // per device
  std::vector<double> rewards;         // per server agent
};

struct EpisodeLog {
  std::vector<SlotRecord> slots;
  int end_slot = 0;
  int horizon = 0;
  EndReason end_reason = EndReason::HorizonReached;
};

// True when the alive sensors, all opened to r_max, can still meet the
// coverage target. Used for the end-of-life check.
inline bool rescue_feasible(const Topology& topo, const SimState& st,
                            double coverage_target) {
  std::vector<double> rmax(topo.sensors.size());
  for (std::size_t i = 0; i < topo.sensors.size(); ++i)
    rmax[i] = topo.sensors[i].r_max;
  return coverage_fraction(topo, rmax, st.alive) >= coverage_target;
}

// Runs until the horizon, or until coverage drops below target with no
// feasible rescue by the surviving devices.
inline EpisodeLog run_episode(const PolicyFn& policy, const Topology& topo,
                              const SimParams& params, int horizon,
                              std::uint64_t seed) {
  EpisodeLog log;
  log.horizon = horizon;
  SimState st = initial_state(topo);
  Rng rng(seed);
  for (int t = 0; t < horizon; ++t) {
    const SlotDecision decision = policy(topo, st, rng);
    SlotMetrics m = step(st, decision, topo, params);
    SlotRecord rec;
    rec.slot = t;
    rec.energy = m.energy;
    rec.coverage = m.coverage;
    rec.dup_device = m.dup_device;
    rec.dup_server = m.dup_server;
    rec.soc.reserve(st.batteries.size());
    for (const BatteryState& b : st.batteries) rec.soc.push_back(b.soc);
    rec.device_drain_j = m.device_drain_j;
    rec.rewards = m.agent_rewards;
    log.slots.push_back(std::move(rec));
    log.end_slot = t + 1;
    const double cov_now =
        coverage_fraction(topo, effective_radii(topo, st), st.alive);
    if (cov_now < params.coverage_target &&
        !rescue_feasible(topo, st, params.coverage_target)) {
      log.end_reason = EndReason::CoverageLost;
      return log;
    }
  }
  log.end_slot = horizon;
  log.end_reason = EndReason::HorizonReached;
  return log;
}

struct Duration {
  int slots = 0;
  bool censored = false;  // horizon reached before coverage was lost
};

inline Duration max_operational_duration(const EpisodeLog& log) {
  if (log.end_reason == EndReason::CoverageLost) return {log.end_slot, false};
  return {log.horizon, true};
}

struct EpisodeSummary {
  double total_energy_j = 0;        // all five terms, whole network
  double device_energy_j = 0;       // battery-attributed only
  double mean_dup_device = 0;
  double mean_dup_server = 0;
  double mean_coverage = 0;
  std::vector<double> device_mean_drain_j;   // per device, per operated slot
  std::vector<double> device_current_proxy;  // drain / (U_ref * slot_s)
  double current_proxy_mean = 0;
  double current_proxy_stddev = 0;
};

inline EpisodeSummary summarize(const EpisodeLog& log, double u_ref = 5.0,
                                double slot_s = 1.0) {
  EpisodeSummary s;
  if (log.slots.empty()) return s;
  const std::size_t devices = log.slots.front().device_drain_j.size();
  s.device_mean_drain_j.assign(devices, 0.0);
  for (const SlotRecord& rec : log.slots) {
    s.total_energy_j += rec.energy.total_j;
    s.mean_dup_device += rec.dup_device;
    s.mean_dup_server += rec.dup_server;
    s.mean_coverage += rec.coverage;
    for (std::size_t d = 0; d < devices; ++d) {
      s.device_energy_j += rec.device_drain_j[d];
      s.device_mean_drain_j[d] += rec.device_drain_j[d];
    }
  }
  const double n = static_cast<double>(log.slots.size());
  s.mean_dup_device /= n;
  s.mean_dup_server /= n;
  s.mean_coverage /= n;
  for (double& v : s.device_mean_drain_j) v /= n;
  s.device_current_proxy.resize(devices);
  for (std::size_t d = 0; d < devices; ++d)
    s.device_current_proxy[d] = s.device_mean_drain_j[d] / (u_ref * slot_s);
  double mean = 0;
  for (double v : s.device_current_proxy) mean += v;
  mean /= devices ? static_cast<double>(devices) : 1.0;
  double var = 0;
  for (double v : s.device_current_proxy) var += (v - mean) * (v - mean);
  var /= devices ? static_cast<double>(devices) : 1.0;
  s.current_proxy_mean = mean;
  s.current_proxy_stddev = std::sqrt(var);
  return s;
}

// Reference full-blast slot energy: everything alive at r_max, everything
// transmitted. Normalizes the reward's energy term.
inline double full_blast_energy(const Topology& topo, double slot_s) {
  SimState st = initial_state(topo);
  SlotDecision keep;
  keep.actions.assign(topo.sensors.size(), RadiusAction::Keep);
  keep.dedup = DedupMode::Retain;
  SimParams params;
  params.slot_seconds = slot_s;
  params.energy_scale = 1.0;
  SimState scratch = st;
  return step(scratch, keep, topo, params).energy.total_j;
}

}  // namespace senses
