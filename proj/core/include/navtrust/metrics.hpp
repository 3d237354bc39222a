#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "navtrust/types.hpp"

namespace navtrust::metrics {

/// Outcome of one navigation episode.
struct EpisodeRecord {
  std::string episode_id;
  bool success = false;
  double path_length = 0.0;      // meters the agent executed
  double geodesic_length = 0.0;  // shortest start-goal distance, > 0
};

/// Fraction of successful episodes. Errors on an empty list.
double success_rate(std::span<const EpisodeRecord> records);

/// Success weighted by path optimality:
///   (1/N) * sum_i success_i * geodesic_i / max(path_i, geodesic_i)
/// Failed episodes contribute 0. Errors on an empty list or any
/// non-positive geodesic length.
double spl(std::span<const EpisodeRecord> records);

enum class MetricName { SR, SPL };

/// One metric across a corruption suite, with its clean baseline.
struct MetricSeries {
  std::string agent_id;
  MetricName metric = MetricName::SR;
  double clean_value = 0.0;
  std::map<CorruptionKind, double> corrupted;
};

struct PrsResult {
  double value = 0.0;
  /// True when some corrupted/clean ratio exceeded 1 (a corruption that
  /// outperformed the clean run). Surfaced, never clamped away.
  bool over_unity = false;
};

/// Performance retention: mean over corruptions of corrupted/clean.
/// 1 is perfect retention, 0 total failure. Errors when the clean baseline
/// is zero or the corrupted map is empty.
PrsResult prs(const MetricSeries& series);

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

/// Boolean occupancy raster used as a desk-scale geodesic oracle.
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, double cell_size);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  bool occupied(Cell c) const { return cells_[index(c)] != 0; }
  void set_occupied(Cell c, bool occupied) { cells_[index(c)] = occupied ? 1 : 0; }

 private:
  std::size_t index(Cell c) const;

  int width_;
  int height_;
  double cell_size_;
  std::vector<std::uint8_t> cells_;
};

/// Thrown when start and goal lie in different connected components.
class NoPathError : public Error {
 public:
  using Error::Error;
};

/// 8-connected shortest path in meters via uniform-cost search; axis moves
/// cost cell_size, diagonal moves cell_size * sqrt(2). Throws
/// ValidationError for occupied endpoints, NoPathError when unreachable.
double grid_geodesic(const OccupancyGrid& grid, Cell start, Cell goal);

}  // namespace navtrust::metrics
