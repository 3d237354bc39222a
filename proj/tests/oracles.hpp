#pragma once

// Independent brute-force oracles. Everything here recomputes expected
// values from first principles and must stay decoupled from the library's
// implementation paths.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "navtrust/metrics.hpp"
#include "navtrust/types.hpp"

namespace navtest {

// Direct 1-D box convolution with clamp-to-edge borders.
inline std::vector<double> box_convolve_clamped(const std::vector<double>& signal,
                                                int taps) {
  const int half = taps / 2;
  const int n = static_cast<int>(signal.size());
  std::vector<double> out(signal.size());
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int k = -half; k <= half; ++k) {
      sum += signal[std::clamp(i + k, 0, n - 1)];
    }
    out[i] = sum / taps;
  }
  return out;
}

// Dense 2-D Gaussian convolution over a square support of radius
// ceil(3*sigma), kernel normalized over that support, clamp-to-edge.
inline navtrust::RgbFrame dense_gaussian_blur(const navtrust::RgbFrame& frame,
                                              double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  const int size = 2 * radius + 1;
  std::vector<double> kernel(static_cast<std::size_t>(size) * size);
  double norm = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      kernel[static_cast<std::size_t>(dy + radius) * size + (dx + radius)] = w;
      norm += w;
    }
  }

  navtrust::RgbFrame out(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        double sum = 0.0;
        for (int dy = -radius; dy <= radius; ++dy) {
          for (int dx = -radius; dx <= radius; ++dx) {
            const int sx = std::clamp(x + dx, 0, frame.width() - 1);
            const int sy = std::clamp(y + dy, 0, frame.height() - 1);
            sum += kernel[static_cast<std::size_t>(dy + radius) * size +
                          (dx + radius)] *
                   frame.at(sx, sy, c);
          }
        }
        out.at(x, y, c) = navtrust::to_channel(sum / norm);
      }
    }
  }
  return out;
}

// Per-term SPL recomputation in extended precision, accumulated in reverse
// order so it cannot share rounding behavior with the implementation.
inline double spl_brute_force(std::span<const navtrust::metrics::EpisodeRecord> records) {
  long double sum = 0.0L;
  for (std::size_t i = records.size(); i-- > 0;) {
    const auto& r = records[i];
    if (!r.success) continue;
    const long double geo = r.geodesic_length;
    const long double len = r.path_length;
    sum += geo / (len > geo ? len : geo);
  }
  return static_cast<double>(sum / static_cast<long double>(records.size()));
}

// All-pairs shortest-path costs by Floyd-Warshall: a dynamic program over
// intermediate-vertex sets, structurally independent of uniform-cost
// search. Unreachable pairs stay at infinity. Entry (a, b) lives at
// [a_flat * cells + b_flat].
inline std::vector<double> floyd_warshall_all_pairs(
    const navtrust::metrics::OccupancyGrid& grid) {
  const int w = grid.width();
  const int h = grid.height();
  const std::size_t cells = static_cast<std::size_t>(w) * h;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(cells * cells, inf);

  const auto flat = [&](int x, int y) {
    return static_cast<std::size_t>(y) * w + x;
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (grid.occupied({x, y})) continue;
      dist[flat(x, y) * cells + flat(x, y)] = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const navtrust::metrics::Cell next{x + dx, y + dy};
          if (!grid.in_bounds(next) || grid.occupied(next)) continue;
          const double edge =
              grid.cell_size() * (dx != 0 && dy != 0 ? std::sqrt(2.0) : 1.0);
          dist[flat(x, y) * cells + flat(next.x, next.y)] = edge;
        }
      }
    }
  }
  for (std::size_t k = 0; k < cells; ++k) {
    for (std::size_t i = 0; i < cells; ++i) {
      const double ik = dist[i * cells + k];
      if (ik == inf) continue;
      for (std::size_t j = 0; j < cells; ++j) {
        const double through = ik + dist[k * cells + j];
        if (through < dist[i * cells + j]) dist[i * cells + j] = through;
      }
    }
  }
  return dist;
}

// Literal exhaustive simple-path enumeration with admissible
// branch-and-bound pruning; feasible on desk-size grids (the 3x3 unit
// fixture). Returns nullopt when the goal is unreachable.
class PathEnumerator {
 public:
  explicit PathEnumerator(const navtrust::metrics::OccupancyGrid& grid)
      : grid_(grid), on_path_(static_cast<std::size_t>(grid.width()) * grid.height(), 0) {}

  std::optional<double> shortest(navtrust::metrics::Cell start,
                                 navtrust::metrics::Cell goal) {
    best_.reset();
    goal_ = goal;
    std::fill(on_path_.begin(), on_path_.end(), 0);
    explore(start, 0.0);
    return best_;
  }

 private:
  // octile distance: provable lower bound on the remaining cost
  double remaining_bound(navtrust::metrics::Cell from) const {
    const double dx = std::abs(from.x - goal_.x);
    const double dy = std::abs(from.y - goal_.y);
    const double lo = std::min(dx, dy);
    const double hi = std::max(dx, dy);
    return grid_.cell_size() * (lo * std::sqrt(2.0) + (hi - lo));
  }

  void explore(navtrust::metrics::Cell cell, double cost) {
    if (best_ && cost + remaining_bound(cell) >= *best_) return;
    if (cell == goal_) {
      if (!best_ || cost < *best_) best_ = cost;
      return;
    }
    on_path_[flat(cell)] = 1;
    static constexpr int kStep[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                                        {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    // descend goal-ward first so the incumbent bound tightens immediately;
    // ordering never skips a candidate, so the enumeration stays exhaustive
    struct Move {
      navtrust::metrics::Cell cell;
      double edge;
      double heuristic;
    };
    std::vector<Move> moves;
    moves.reserve(8);
    for (const auto& step : kStep) {
      const navtrust::metrics::Cell next{cell.x + step[0], cell.y + step[1]};
      if (!grid_.in_bounds(next) || grid_.occupied(next) || on_path_[flat(next)]) {
        continue;
      }
      const bool diagonal = step[0] != 0 && step[1] != 0;
      const double edge = grid_.cell_size() * (diagonal ? std::sqrt(2.0) : 1.0);
      moves.push_back({next, edge, edge + remaining_bound(next)});
    }
    std::sort(moves.begin(), moves.end(),
              [](const Move& a, const Move& b) { return a.heuristic < b.heuristic; });
    for (const Move& move : moves) {
      explore(move.cell, cost + move.edge);
    }
    on_path_[flat(cell)] = 0;
  }

  std::size_t flat(navtrust::metrics::Cell c) const {
    return static_cast<std::size_t>(c.y) * grid_.width() + c.x;
  }

  const navtrust::metrics::OccupancyGrid& grid_;
  std::vector<std::uint8_t> on_path_;
  std::optional<double> best_;
  navtrust::metrics::Cell goal_{};
};

}  // namespace navtest
