#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "senses/common.hpp"
#include "senses/config.hpp"

namespace senses {

using CellIndex = std::int32_t;

// Discretized target area. Cell (ix, iy) has index iy * nx + ix and its
// center at ((ix + 0.5) / resolution, (iy + 0.5) / resolution).
struct AreaGrid {
  double width = 0;
  double height = 0;
  int resolution = 1;
  int nx = 0;
  int ny = 0;

  static AreaGrid make(double width, double height, int resolution) {
    AreaGrid g;
    g.width = width;
    g.height = height;
    g.resolution = resolution;
    g.nx = static_cast<int>(std::lround(width * resolution));
    g.ny = static_cast<int>(std::lround(height * resolution));
    return g;
  }

  int cell_count() const { return nx * ny; }
  double cell_x(CellIndex c) const {
    return (static_cast<double>(c % nx) + 0.5) / resolution;
  }
  double cell_y(CellIndex c) const {
    return (static_cast<double>(c / nx) + 0.5) / resolution;
  }
};

struct Position {
  double x = 0;
  double y = 0;
};

struct Sensor {
  int id = 0;
  Position position;
  double r_max = 0;
  bool adjustable = true;
  double voltage_u = 0;
  double current_a = 0;  // idle draw, amps
  double current_b = 0;  // amps per square area unit of coverage
  double bytes_per_cell = 0;
  int owner_device = -1;
  double link_rate_b1 = 0;
  double link_power_p1 = 0;
  double fixed_l1 = 0;  // inner zone radius; meaningful only when !adjustable
};

struct BatteryState {
  double soe = 1.0;   // effective capacity, fraction of initial
  double soc = 1.0;   // charge, fraction of current effective capacity
  double dod = 0.0;   // released, always 1 - soc
  double capacity_j = 0;
  double soc_min = 0.05;
  double soc_max = 1.0;
  bool dead = false;
};

struct ServerLink {
  int server = -1;
  double rate_b = 0;   // bytes/s
  double power_p = 0;  // watts
};

struct ControlDevice {
  int id = 0;
  Position position;
  BatteryState battery;
  double compute_freq_f = 0;
  double energy_factor_k = 0;
  double workload_w = 0;  // initial W^n; the evolving value lives in SimState
  std::vector<ServerLink> server_links;
};

struct PeerLink {
  int server = -1;
  double rate_b = 0;
  double power_p = 0;
};

struct EdgeServer {
  int id = 0;
  double compute_capacity_ec = 0;
  double storage_capacity_es = 0;
  double workload_w = 0;
  std::vector<PeerLink> peer_links;
};

// Immutable network structure. Safe to share read-only across threads.
struct Topology {
  std::vector<Sensor> sensors;
  std::vector<ControlDevice> devices;
  std::vector<EdgeServer> servers;
  AreaGrid grid;
  std::uint64_t rng_seed = 0;
  int hub_server = 0;
};

// Grid cells whose centers lie within `radius` of the sensor, ascending
// index order. Throws RadiusOutOfRange outside [0, r_max].
inline std::vector<CellIndex> covered_cells(const Sensor& s, double radius,
                                            const AreaGrid& grid) {
  if (radius < 0 || radius > s.r_max)
    throw RadiusOutOfRange("radius " + std::to_string(radius) +
                           " outside [0, " + std::to_string(s.r_max) + "]");
  std::vector<CellIndex> cells;
  if (radius == 0 || grid.cell_count() == 0) return cells;
  const double r2 = radius * radius;
  int ix_lo = std::max(0, static_cast<int>(std::floor((s.position.x - radius) * grid.resolution)) - 1);
  int ix_hi = std::min(grid.nx - 1, static_cast<int>(std::ceil((s.position.x + radius) * grid.resolution)) + 1);
  int iy_lo = std::max(0, static_cast<int>(std::floor((s.position.y - radius) * grid.resolution)) - 1);
  int iy_hi = std::min(grid.ny - 1, static_cast<int>(std::ceil((s.position.y + radius) * grid.resolution)) + 1);
  for (int iy = iy_lo; iy <= iy_hi; ++iy) {
    const double cy = (iy + 0.5) / grid.resolution;
    const double dy2 = (cy - s.position.y) * (cy - s.position.y);
    if (dy2 > r2) continue;
    for (int ix = ix_lo; ix <= ix_hi; ++ix) {
      const double cx = (ix + 0.5) / grid.resolution;
      const double dx = cx - s.position.x;
      if (dx * dx + dy2 <= r2)
        cells.push_back(static_cast<CellIndex>(iy) * grid.nx + ix);
    }
  }
  return cells;
}

inline double sensed_data_size(const Sensor& s, double radius, const AreaGrid& grid) {
  return s.bytes_per_cell *
         static_cast<double>(covered_cells(s, radius, grid).size());
}

namespace detail {

// Shared cell-multiset scan: fills counts for sensors of alive devices and
// returns (sum of per-sensor counts, union size).
inline std::pair<std::int64_t, std::int64_t> cover_counts(
    const Topology& topo, const std::vector<double>& radii,
    const std::vector<std::uint8_t>& alive, std::vector<std::int32_t>& scratch) {
  scratch.assign(topo.grid.cell_count(), 0);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < topo.sensors.size(); ++i) {
    const Sensor& s = topo.sensors[i];
    if (s.owner_device < 0 || !alive[s.owner_device]) continue;
    for (CellIndex c : covered_cells(s, radii[i], topo.grid)) {
      ++scratch[c];
      ++total;
    }
  }
  std::int64_t uni = 0;
  for (std::int32_t c : scratch) uni += (c > 0);
  return {total, uni};
}

}  // namespace detail

// Fraction of grid cells covered by at least one sensor owned by an alive
// device, at the given per-sensor radii.
inline double coverage_fraction(const Topology& topo, const std::vector<double>& radii,
                                const std::vector<std::uint8_t>& alive) {
  if (radii.size() != topo.sensors.size())
    throw LengthMismatch("coverage_fraction: radii size != sensor count");
  std::vector<std::int32_t> scratch;
  auto [total, uni] = detail::cover_counts(topo, radii, alive, scratch);
  (void)total;
  const int cells = topo.grid.cell_count();
  return cells == 0 ? 0.0 : static_cast<double>(uni) / cells;
}

// (sum of per-sensor covered counts - union) / sum; 0 when nothing is covered.
inline double duplication_rate(const Topology& topo, const std::vector<double>& radii,
                               const std::vector<std::uint8_t>& alive) {
  if (radii.size() != topo.sensors.size())
    throw LengthMismatch("duplication_rate: radii size != sensor count");
  std::vector<std::int32_t> scratch;
  auto [total, uni] = detail::cover_counts(topo, radii, alive, scratch);
  if (total == 0) return 0.0;
  return static_cast<double>(total - uni) / static_cast<double>(total);
}

namespace detail {

// Greedy placement: each device goes to the cell center that covers the most
// still-uncovered cells within the nominal radius.
inline std::vector<Position> place_devices_greedy(const AreaGrid& grid, int count,
                                                  double nominal_radius) {
  const int n = grid.cell_count();
  std::vector<std::uint8_t> covered(n, 0);
  // Offsets of cells within nominal radius of a cell center, relative (dx, dy).
  std::vector<std::pair<int, int>> offsets;
  const int reach = static_cast<int>(std::ceil(nominal_radius * grid.resolution)) + 1;
  const double r2 = nominal_radius * nominal_radius;
  const double inv = 1.0 / grid.resolution;
  for (int dy = -reach; dy <= reach; ++dy)
    for (int dx = -reach; dx <= reach; ++dx)
      if ((dx * inv) * (dx * inv) + (dy * inv) * (dy * inv) <= r2)
        offsets.emplace_back(dx, dy);

  std::vector<Position> placed;
  placed.reserve(count);
  for (int d = 0; d < count; ++d) {
    int best_cell = 0;
    std::int64_t best_gain = -1;
    for (int c = 0; c < n; ++c) {
      const int cx = c % grid.nx, cy = c / grid.nx;
      std::int64_t gain = 0;
      for (auto [dx, dy] : offsets) {
        const int x = cx + dx, y = cy + dy;
        if (x < 0 || x >= grid.nx || y < 0 || y >= grid.ny) continue;
        gain += !covered[y * grid.nx + x];
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_cell = c;
      }
    }
    for (auto [dx, dy] : offsets) {
      const int x = best_cell % grid.nx + dx, y = best_cell / grid.nx + dy;
      if (x >= 0 && x < grid.nx && y >= 0 && y < grid.ny) covered[y * grid.nx + x] = 1;
    }
    placed.push_back({grid.cell_x(best_cell), grid.cell_y(best_cell)});
  }
  return placed;
}

}  // namespace detail

// Builds the full network: greedy device placement, random sensor placement
// retried until the r_max union meets the coverage target, nearest-device
// sensor assignment, round-robin device -> server links, full peer mesh.
// Pure function of (config, seed).
inline Topology build_topology(const SimConfig& cfg, std::uint64_t seed) {
  validate_config(cfg);
  Topology topo;
  topo.rng_seed = seed;
  topo.grid = AreaGrid::make(cfg.width, cfg.height, cfg.resolution);
  Rng rng(seed);

  const double nominal = 0.5 * (cfg.radius_min + cfg.radius_max);
  auto device_pos = detail::place_devices_greedy(topo.grid, cfg.devices, nominal);

  topo.servers.resize(cfg.servers);
  for (int j = 0; j < cfg.servers; ++j) {
    EdgeServer& e = topo.servers[j];
    e.id = j;
    e.compute_capacity_ec = cfg.compute_capacity;
    e.storage_capacity_es = cfg.storage_capacity;
    e.workload_w = 0;
    for (int o = 0; o < cfg.servers; ++o)
      if (o != j) e.peer_links.push_back({o, cfg.peer_rate_b3, cfg.peer_power_p3});
  }

  topo.devices.resize(cfg.devices);
  for (int d = 0; d < cfg.devices; ++d) {
    ControlDevice& c = topo.devices[d];
    c.id = d;
    c.position = device_pos[d];
    c.battery.capacity_j = rng.uniform(cfg.capacity_min_j, cfg.capacity_max_j);
    c.battery.soe = 1.0;
    c.battery.soc = cfg.soc_max;
    c.battery.dod = 1.0 - cfg.soc_max;
    c.battery.soc_min = cfg.soc_min;
    c.battery.soc_max = cfg.soc_max;
    c.compute_freq_f = cfg.compute_freq;
    c.energy_factor_k = cfg.energy_factor_k;
    const double b2 = rng.uniform(cfg.link_rate_b2_min, cfg.link_rate_b2_max);
    const double p2 = rng.uniform(cfg.link_power_p2_min, cfg.link_power_p2_max);
    c.server_links.push_back({d % cfg.servers, b2, p2});
  }

  // Sensor placement: retry whole draws until the r_max disks cover enough.
  std::vector<std::uint8_t> all_alive(cfg.devices, 1);
  for (int attempt = 0;; ++attempt) {
    if (attempt >= cfg.max_attempts)
      throw InfeasibleCoverage(
          "no sensor placement reached coverage target " +
          std::to_string(cfg.coverage_target) + " in " +
          std::to_string(cfg.max_attempts) + " attempts");
    topo.sensors.assign(cfg.sensors, Sensor{});
    for (int i = 0; i < cfg.sensors; ++i) {
      Sensor& s = topo.sensors[i];
      s.id = i;
      s.position.x = std::clamp(rng.uniform(0.0, cfg.width), 0.0, cfg.width);
      s.position.y = std::clamp(rng.uniform(0.0, cfg.height), 0.0, cfg.height);
      s.r_max = rng.uniform(cfg.radius_min, cfg.radius_max);
      s.adjustable = i < cfg.adjustable;
      s.fixed_l1 = s.adjustable ? 0.0 : cfg.l1_fraction * s.r_max;
      s.voltage_u = cfg.voltage_u;
      s.current_a = cfg.current_a;
      s.current_b = cfg.current_b;
      s.bytes_per_cell = cfg.bytes_per_cell;
      s.link_rate_b1 = cfg.link_rate_b1;
      s.link_power_p1 = cfg.link_power_p1;
      int nearest = 0;
      double best = std::numeric_limits<double>::max();
      for (int d = 0; d < cfg.devices; ++d) {
        const double dx = device_pos[d].x - s.position.x;
        const double dy = device_pos[d].y - s.position.y;
        const double dist2 = dx * dx + dy * dy;
        if (dist2 < best) {
          best = dist2;
          nearest = d;
        }
      }
      s.owner_device = nearest;
    }
    std::vector<double> rmax(cfg.sensors);
    for (int i = 0; i < cfg.sensors; ++i) rmax[i] = topo.sensors[i].r_max;
    if (coverage_fraction(topo, rmax, all_alive) >= cfg.coverage_target) break;
  }
  return topo;
}

}  // namespace senses
