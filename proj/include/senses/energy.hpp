#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "senses/netmodel.hpp"

namespace senses {

// Per-slot energy ledger, one field per term of the total-energy objective.
struct EnergyBreakdown {
  double sensing_j = 0;
  double tran1_j = 0;
  double comp_j = 0;
  double tran2_j = 0;
  double tran3_j = 0;
  double total_j = 0;
};

inline EnergyBreakdown& operator+=(EnergyBreakdown& a, const EnergyBreakdown& b) {
  a.sensing_j += b.sensing_j;
  a.tran1_j += b.tran1_j;
  a.comp_j += b.comp_j;
  a.tran2_j += b.tran2_j;
  a.tran3_j += b.tran3_j;
  a.total_j += b.total_j;
  return a;
}

// Routing and byte accounting for one sensor datum within a slot. comp_bytes
// is what the owning device actually formats (post-suppression); tran2_bytes
// is what crosses the device -> server link (inflated when compute is
// offloaded raw); hub_bytes is what the server forwards toward the hub after
// any server-side deduplication.
struct DatumRoute {
  std::optional<int> server;  // nullopt: datum fully suppressed, no uplink
  double comp_bytes = 0;
  double tran2_bytes = 0;
  double hub_bytes = 0;
  std::vector<std::pair<int, int>> hub_path;  // server-pair hops
  bool comp_at_server = false;                // offloaded: off the battery ledger
};

struct LinkSelection {
  std::vector<DatumRoute> routes;  // indexed by sensor id
};

// Sensor draw at the given coverage radius: (a + b * R^2) * U * slot.
inline double sensing_energy(const Sensor& s, double radius, double slot_s) {
  if (radius < 0 || radius > s.r_max)
    throw RadiusOutOfRange("sensing_energy: radius " + std::to_string(radius) +
                           " outside [0, " + std::to_string(s.r_max) + "]");
  const double current = s.current_a + s.current_b * radius * radius;
  return current * s.voltage_u * slot_s;
}

// Sensor -> control device transmission over the one-hot owner link.
inline double tran1_energy(const Sensor& s, double data_bytes) {
  if (s.link_rate_b1 <= 0)
    throw MissingLink("tran1_energy: sensor " + std::to_string(s.id) +
                      " has no usable uplink rate");
  return (data_bytes / s.link_rate_b1) * s.link_power_p1;
}

// Formatting cost on the control device: k * bytes * f^2.
inline double comp_energy(double data_bytes, double f_comp, double k) {
  return k * data_bytes * f_comp * f_comp;
}

// Device -> server transmission over the selected link; a suppressed datum
// (no selection) costs nothing.
inline double tran2_energy(const ControlDevice& dev, const std::optional<int>& server,
                           double data_bytes) {
  if (!server.has_value()) return 0.0;
  for (const ServerLink& link : dev.server_links)
    if (link.server == *server) return (data_bytes / link.rate_b) * link.power_p;
  throw LinkNotOwned("tran2_energy: device " + std::to_string(dev.id) +
                     " has no link to server " + std::to_string(*server));
}

// Server-to-server forwarding along a hop path.
inline double tran3_energy(const Topology& topo,
                           const std::vector<std::pair<int, int>>& path,
                           double data_bytes) {
  double total = 0;
  int prev_dst = -1;
  for (const auto& [from, to] : path) {
    if (prev_dst >= 0 && from != prev_dst)
      throw BrokenPath("tran3_energy: hop does not continue from server " +
                       std::to_string(prev_dst));
    if (from < 0 || from >= static_cast<int>(topo.servers.size()))
      throw BrokenPath("tran3_energy: unknown server " + std::to_string(from));
    const PeerLink* link = nullptr;
    for (const PeerLink& pl : topo.servers[from].peer_links)
      if (pl.server == to) {
        link = &pl;
        break;
      }
    if (!link)
      throw BrokenPath("tran3_energy: no peer link " + std::to_string(from) +
                       " -> " + std::to_string(to));
    total += (data_bytes / link->rate_b) * link->power_p;
    prev_dst = to;
  }
  return total;
}

struct SlotLedger {
  EnergyBreakdown breakdown;
  std::vector<double> device_drain_j;  // battery-attributed energy per device
};

// Sums all five terms over sensors whose owner device is alive, and
// attributes the battery-powered share (sensing, tran1, comp unless
// offloaded, tran2) to each device.
inline SlotLedger slot_energy_ledger(const Topology& topo,
                                     const std::vector<std::uint8_t>& alive,
                                     const std::vector<double>& radii,
                                     const LinkSelection& sel, double slot_s) {
  if (radii.size() != topo.sensors.size() || sel.routes.size() != topo.sensors.size())
    throw LengthMismatch("slot_energy_ledger: per-sensor inputs inconsistent");
  SlotLedger ledger;
  ledger.device_drain_j.assign(topo.devices.size(), 0.0);
  EnergyBreakdown& out = ledger.breakdown;
  for (std::size_t i = 0; i < topo.sensors.size(); ++i) {
    const Sensor& s = topo.sensors[i];
    if (s.owner_device < 0 || !alive[s.owner_device]) continue;
    const ControlDevice& dev = topo.devices[s.owner_device];
    const DatumRoute& route = sel.routes[i];

    const double e_sense = sensing_energy(s, radii[i], slot_s);
    const double sensed = sensed_data_size(s, radii[i], topo.grid);
    const double e_t1 = tran1_energy(s, sensed);
    const double e_comp = comp_energy(route.comp_bytes, dev.compute_freq_f,
                                      dev.energy_factor_k);
    const double e_t2 = tran2_energy(dev, route.server, route.tran2_bytes);
    const double e_t3 = tran3_energy(topo, route.hub_path, route.hub_bytes);

    out.sensing_j += e_sense;
    out.tran1_j += e_t1;
    out.comp_j += e_comp;
    out.tran2_j += e_t2;
    out.tran3_j += e_t3;
    ledger.device_drain_j[s.owner_device] +=
        e_sense + e_t1 + (route.comp_at_server ? 0.0 : e_comp) + e_t2;
  }
  out.total_j = out.sensing_j + out.tran1_j + out.comp_j + out.tran2_j + out.tran3_j;
  return ledger;
}

inline EnergyBreakdown total_slot_energy(const Topology& topo,
                                         const std::vector<std::uint8_t>& alive,
                                         const std::vector<double>& radii,
                                         const LinkSelection& sel, double slot_s) {
  return slot_energy_ledger(topo, alive, radii, sel, slot_s).breakdown;
}

// Consumes spent_j from the battery. Crossing soc_min flags the state dead
// and clamps; death is a state, not an error.
inline BatteryState drain_battery(const BatteryState& b, double spent_j) {
  BatteryState next = b;
  if (spent_j <= 0 || b.dead) return next;
  const double effective = b.soe * b.capacity_j;
  next.soc = b.soc - spent_j / effective;
  if (next.soc < b.soc_min) {
    next.soc = b.soc_min;
    next.dead = true;
  }
  next.dod = 1.0 - next.soc;
  return next;
}

}  // namespace senses
