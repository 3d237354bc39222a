#include "navtrust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace navtrust::metrics {

double success_rate(std::span<const EpisodeRecord> records) {
  if (records.empty()) {
    throw ValidationError("success rate of an empty episode list is undefined");
  }
  std::size_t successes = 0;
  for (const auto& r : records) {
    if (r.success) ++successes;
  }
  return static_cast<double>(successes) / static_cast<double>(records.size());
}

double spl(std::span<const EpisodeRecord> records) {
  if (records.empty()) {
    throw ValidationError("SPL of an empty episode list is undefined");
  }
  double sum = 0.0;
  for (const auto& r : records) {
    if (!(r.geodesic_length > 0.0)) {
      throw ValidationError("episode " + r.episode_id +
                            ": geodesic length must be positive");
    }
    if (r.path_length < 0.0) {
      throw ValidationError("episode " + r.episode_id +
                            ": path length must be non-negative");
    }
    if (r.success) {
      sum += r.geodesic_length / std::max(r.path_length, r.geodesic_length);
    }
  }
  return sum / static_cast<double>(records.size());
}

PrsResult prs(const MetricSeries& series) {
  if (series.corrupted.empty()) {
    throw ValidationError("PRS needs at least one corrupted measurement");
  }
  if (!(series.clean_value > 0.0)) {
    throw ValidationError("PRS undefined for zero clean baseline (agent \"" +
                          series.agent_id + "\")");
  }
  PrsResult result;
  double sum = 0.0;
  for (const auto& [kind, value] : series.corrupted) {
    if (value < 0.0) {
      throw ValidationError("negative metric value under " +
                            std::string(to_string(kind)));
    }
    const double ratio = value / series.clean_value;
    if (ratio > 1.0) result.over_unity = true;
    sum += ratio;
  }
  result.value = sum / static_cast<double>(series.corrupted.size());
  return result;
}

OccupancyGrid::OccupancyGrid(int width, int height, double cell_size)
    : width_(width), height_(height), cell_size_(cell_size) {
  if (width < 1 || height < 1) {
    throw ValidationError("grid dimensions must be at least 1x1");
  }
  if (!(cell_size > 0.0)) throw ValidationError("cell size must be positive");
  cells_.assign(static_cast<std::size_t>(width) * height, 0);
}

std::size_t OccupancyGrid::index(Cell c) const {
  if (!in_bounds(c)) {
    throw ValidationError("cell (" + std::to_string(c.x) + ", " +
                          std::to_string(c.y) + ") outside the grid");
  }
  return static_cast<std::size_t>(c.y) * width_ + c.x;
}

double grid_geodesic(const OccupancyGrid& grid, Cell start, Cell goal) {
  if (grid.occupied(start)) throw ValidationError("start cell is occupied");
  if (grid.occupied(goal)) throw ValidationError("goal cell is occupied");
  if (start == goal) return 0.0;

  const double axis_cost = grid.cell_size();
  const double diag_cost = grid.cell_size() * std::sqrt(2.0);

  struct Node {
    double cost;
    int x, y;
    bool operator>(const Node& other) const { return cost > other.cost; }
  };

  const std::size_t total = static_cast<std::size_t>(grid.width()) * grid.height();
  std::vector<double> best(total, std::numeric_limits<double>::infinity());
  std::priority_queue<Node, std::vector<Node>, std::greater<>> open;

  const auto flat = [&](int x, int y) {
    return static_cast<std::size_t>(y) * grid.width() + x;
  };
  best[flat(start.x, start.y)] = 0.0;
  open.push({0.0, start.x, start.y});

  constexpr int kStep[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                               {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  while (!open.empty()) {
    const Node node = open.top();
    open.pop();
    if (node.x == goal.x && node.y == goal.y) return node.cost;
    if (node.cost > best[flat(node.x, node.y)]) continue;
    for (const auto& step : kStep) {
      const Cell next{node.x + step[0], node.y + step[1]};
      if (!grid.in_bounds(next) || grid.occupied(next)) continue;
      const bool diagonal = step[0] != 0 && step[1] != 0;
      const double cost = node.cost + (diagonal ? diag_cost : axis_cost);
      if (cost < best[flat(next.x, next.y)]) {
        best[flat(next.x, next.y)] = cost;
        open.push({cost, next.x, next.y});
      }
    }
  }
  throw NoPathError("no path between (" + std::to_string(start.x) + ", " +
                    std::to_string(start.y) + ") and (" + std::to_string(goal.x) +
                    ", " + std::to_string(goal.y) + ")");
}

}  // namespace navtrust::metrics
