#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "senses/common.hpp"
#include "senses/netmodel.hpp"

namespace senses {

// Three-priority zoning of a fixed-coverage sensor's disk. Inner (red) zone
// is what the sensor would have shrunk to if it could; blue and green rings
// carry progressively lower priority.
struct PriorityPartition {
  std::vector<CellIndex> red_cells;
  std::vector<CellIndex> blue_cells;
  std::vector<CellIndex> green_cells;
  double l1 = 0;
  double l2 = 0;
};

enum class Stage { Red, Blue, Green };

struct StagedBatch {
  Stage stage = Stage::Red;
  double data_bytes = 0;
  std::vector<CellIndex> cells;
};

// Splits the covered disk at l1 and l2 = (r_max + l1)/2 (or an override in
// (l1, r_max)). Only fixed-coverage sensors are partitioned.
inline PriorityPartition partition(const Sensor& s, const AreaGrid& grid,
                                   double l2_override = -1.0) {
  if (s.adjustable)
    throw NotFixedSensor("partition: sensor " + std::to_string(s.id) +
                         " has adjustable coverage");
  const double l1 = s.fixed_l1;
  if (!(l1 > 0 && l1 < s.r_max))
    throw BadL1("partition: l1 " + std::to_string(l1) + " outside (0, r_max)");
  double l2 = l2_override > 0 ? l2_override : 0.5 * (s.r_max + l1);
  if (!(l2 > l1 && l2 < s.r_max))
    throw BadL1("partition: l2 " + std::to_string(l2) +
                " outside (l1, r_max)");
  PriorityPartition part;
  part.l1 = l1;
  part.l2 = l2;
  const double l1sq = l1 * l1, l2sq = l2 * l2;
  for (CellIndex c : covered_cells(s, s.r_max, grid)) {
    const double dx = grid.cell_x(c) - s.position.x;
    const double dy = grid.cell_y(c) - s.position.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 <= l1sq)
      part.red_cells.push_back(c);
    else if (d2 <= l2sq)
      part.blue_cells.push_back(c);
    else
      part.green_cells.push_back(c);
  }
  return part;
}

// Priority-ordered emission against the server's current holdings. Red is
// always emitted (cells already held are excluded, so it may be empty);
// blue and green fire only while some of their cells are still missing.
inline std::vector<StagedBatch> staged_transmit(
    const PriorityPartition& part, const std::vector<std::uint8_t>& region_complete,
    double bytes_per_cell) {
  auto missing = [&region_complete](const std::vector<CellIndex>& zone) {
    std::vector<CellIndex> need;
    for (CellIndex c : zone)
      if (!region_complete[static_cast<std::size_t>(c)]) need.push_back(c);
    return need;
  };
  std::vector<StagedBatch> batches;
  StagedBatch red{Stage::Red, 0, missing(part.red_cells)};
  red.data_bytes = bytes_per_cell * static_cast<double>(red.cells.size());
  batches.push_back(std::move(red));
  std::vector<CellIndex> blue_need = missing(part.blue_cells);
  if (!blue_need.empty()) {
    StagedBatch b{Stage::Blue, bytes_per_cell * static_cast<double>(blue_need.size()),
                  std::move(blue_need)};
    batches.push_back(std::move(b));
  }
  std::vector<CellIndex> green_need = missing(part.green_cells);
  if (!green_need.empty()) {
    StagedBatch g{Stage::Green, bytes_per_cell * static_cast<double>(green_need.size()),
                  std::move(green_need)};
    batches.push_back(std::move(g));
  }
  return batches;
}

struct DedupResult {
  double unique_bytes = 0;
  double dropped_bytes = 0;
};

// First-arrival-kept filter over cell batches. Identity of an observation is
// a 64-bit hash of (cell, slot); returns the surviving cells per batch.
inline std::vector<std::vector<CellIndex>> hash_dedup_kept(
    const std::vector<std::vector<CellIndex>>& batches, std::int64_t slot) {
  std::vector<std::vector<CellIndex>> kept(batches.size());
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < batches.size(); ++i)
    for (CellIndex c : batches[i])
      if (seen.insert(hash_cell_slot(c, slot)).second) kept[i].push_back(c);
  return kept;
}

// Byte accounting on top of the same filter.
// unique_bytes + dropped_bytes always equals the input total.
inline DedupResult hash_dedup(
    const std::vector<std::pair<std::vector<CellIndex>, double>>& batches,
    std::int64_t slot = 0) {
  std::vector<std::vector<CellIndex>> cell_lists;
  cell_lists.reserve(batches.size());
  for (const auto& [cells, bytes] : batches) cell_lists.push_back(cells);
  const auto kept = hash_dedup_kept(cell_lists, slot);
  DedupResult out;
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const auto& [cells, bytes] = batches[i];
    if (cells.empty()) {
      out.unique_bytes += bytes;
      continue;
    }
    const double per_cell = bytes / static_cast<double>(cells.size());
    out.unique_bytes += per_cell * static_cast<double>(kept[i].size());
    out.dropped_bytes +=
        per_cell * static_cast<double>(cells.size() - kept[i].size());
  }
  return out;
}

}  // namespace senses
