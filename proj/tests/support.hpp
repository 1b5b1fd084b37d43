#pragma once

// Shared test oracles. Everything here recomputes results through a route
// independent of the library implementation: full per-cell scans, naive
// double-loop sums, central finite differences.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "senses/marl.hpp"
#include "senses/netmodel.hpp"
#include "senses/sim.hpp"

namespace testsupport {

// Brute-force disk membership: scans every grid cell.
inline std::vector<senses::CellIndex> bf_disk_cells(const senses::AreaGrid& grid,
                                                    double x, double y, double r) {
  std::vector<senses::CellIndex> cells;
  for (int c = 0; c < grid.cell_count(); ++c) {
    const double dx = grid.cell_x(c) - x;
    const double dy = grid.cell_y(c) - y;
    if (dx * dx + dy * dy <= r * r) cells.push_back(c);
  }
  return cells;
}

struct CoverStats {
  std::int64_t total = 0;  // sum of per-sensor covered counts
  std::int64_t unique = 0;
};

// Independent per-cell counting pass over the whole grid.
inline CoverStats bf_cover_stats(const senses::Topology& topo,
                                 const std::vector<double>& radii,
                                 const std::vector<std::uint8_t>& alive) {
  CoverStats st;
  for (int c = 0; c < topo.grid.cell_count(); ++c) {
    const double cx = topo.grid.cell_x(c), cy = topo.grid.cell_y(c);
    int hits = 0;
    for (std::size_t i = 0; i < topo.sensors.size(); ++i) {
      const senses::Sensor& s = topo.sensors[i];
      if (!alive[s.owner_device]) continue;
      const double dx = cx - s.position.x, dy = cy - s.position.y;
      if (dx * dx + dy * dy <= radii[i] * radii[i]) ++hits;
    }
    st.total += hits;
    st.unique += hits > 0;
  }
  return st;
}

// Naive O(T^2) advantage sum with truncation at the episode end.
inline std::vector<double> naive_gae(const std::vector<double>& rewards,
                                     const std::vector<double>& values,
                                     double gamma, double lambda) {
  const std::size_t n = rewards.size();
  std::vector<double> adv(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double factor = 1.0;
    for (std::size_t l = t; l < n; ++l) {
      const double delta = rewards[l] + gamma * values[l + 1] - values[l];
      adv[t] += factor * delta;
      factor *= gamma * lambda;
    }
  }
  return adv;
}

// Central finite difference of a scalar function of one MLP parameter.
inline double fd_weight(senses::Mlp& net, std::size_t layer, std::size_t idx,
                        const std::function<double()>& loss, double h = 1e-5) {
  double& w = net.mutable_weights()[layer][idx];
  const double orig = w;
  w = orig + h;
  const double up = loss();
  w = orig - h;
  const double down = loss();
  w = orig;
  return (up - down) / (2 * h);
}

inline double fd_bias(senses::Mlp& net, std::size_t layer, std::size_t idx,
                      const std::function<double()>& loss, double h = 1e-5) {
  double& b = net.mutable_biases()[layer][idx];
  const double orig = b;
  b = orig + h;
  const double up = loss();
  b = orig - h;
  const double down = loss();
  b = orig;
  return (up - down) / (2 * h);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max({std::abs(got), std::abs(want), 1e-3});
}

// Hand-built single-chain topology: one sensor on one device, whose server
// forwards to a separate hub. Constants chosen so the slot ledger is easy to
// verify by hand (see chain_expected_*).
struct MicroChain {
  senses::Topology topo;
  double sensed_bytes = 0;  // exactly 1000 by construction
};

inline MicroChain micro_chain() {
  MicroChain mc;
  senses::Topology& t = mc.topo;
  t.grid = senses::AreaGrid::make(40, 40, 1);
  t.rng_seed = 0;
  t.hub_server = 0;

  senses::Sensor s;
  s.id = 0;
  s.position = {20.0, 20.0};
  s.r_max = 20.0;
  s.adjustable = true;
  s.voltage_u = 5.0;
  s.current_a = 0.01;
  s.current_b = 0.0004;
  s.owner_device = 0;
  s.link_rate_b1 = 1000.0;
  s.link_power_p1 = 0.5;
  const auto cells = covered_cells(s, s.r_max, t.grid);
  s.bytes_per_cell = 1000.0 / static_cast<double>(cells.size());
  t.sensors.push_back(s);
  mc.sensed_bytes = s.bytes_per_cell * static_cast<double>(cells.size());

  senses::ControlDevice d;
  d.id = 0;
  d.position = {20.0, 20.0};
  d.battery.capacity_j = 3000.0;
  d.battery.soc = 1.0;
  d.battery.soc_min = 0.05;
  d.battery.soc_max = 1.0;
  d.compute_freq_f = 1000.0;
  d.energy_factor_k = 1e-9;
  d.server_links.push_back({1, 1000.0, 1.0});
  t.devices.push_back(d);

  for (int j = 0; j < 2; ++j) {
    senses::EdgeServer e;
    e.id = j;
    e.compute_capacity_ec = 1e9;
    e.storage_capacity_es = 1e12;
    e.peer_links.push_back({1 - j, 1000.0, 1.0});
    t.servers.push_back(e);
  }
  return mc;
}

// Component values for the chain at radius 20 with 1000 sensed bytes:
// sensing (0.01 + 0.0004 * 400) * 5 * 1 = 0.85
// tran1   (1000 / 1000) * 0.5          = 0.5
// comp    1e-9 * 1000 * 1000^2         = 1.0
// tran2   (1000 / 1000) * 1.0          = 1.0
// tran3   (1000 / 1000) * 1.0          = 1.0
constexpr double kChainSensing = 0.85;
constexpr double kChainTran1 = 0.5;
constexpr double kChainComp = 1.0;
constexpr double kChainTran2 = 1.0;
constexpr double kChainTran3 = 1.0;
constexpr double kChainTotal = 4.35;

}  // namespace testsupport
