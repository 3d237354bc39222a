#include "navtrust/depth_corrupt.hpp"

#include <algorithm>
#include <cmath>

namespace navtrust::depth {

namespace {

float clamp_depth(double v, float valid_max) {
  if (v <= 0.0) return 0.0f;
  if (v >= valid_max) return valid_max;
  return static_cast<float>(v);
}

}  // namespace

DepthFrame gaussian_noise(const DepthFrame& frame, Severity s, RandomStream& rng) {
  const double sigma = schedule::kJitterSigmaGain * s.value();
  if (sigma == 0.0) return frame;

  DepthFrame out = frame;
  for (float& v : out.values()) {
    if (v <= 0.0f) continue;  // invalid readings carry no jitter
    v = clamp_depth(v + rng.normal(0.0, sigma), frame.valid_max());
  }
  return out;
}

DepthFrame missing_data(const DepthFrame& frame, Severity s, RandomStream& rng,
                        MissingFill fill) {
  const int w = frame.width();
  const int h = frame.height();
  const std::size_t total = static_cast<std::size_t>(w) * h;
  const double target = schedule::kCoverageGain * s.value() * total;

  std::vector<std::uint8_t> masked(total, 0);
  std::size_t covered = 0;
  int blobs = 0;
  const double radius_hi =
      schedule::kHoleRadiusMin + schedule::kHoleRadiusGain * s.value();
  while (static_cast<double>(covered) < target &&
         blobs < schedule::kMaxHoleBlobs) {
    const double cx = rng.uniform(0.0, w);
    const double cy = rng.uniform(0.0, h);
    const double radius = rng.uniform(schedule::kHoleRadiusMin, radius_hi);
    const double r2 = radius * radius;
    const int x_lo = std::max(0, static_cast<int>(std::floor(cx - radius)));
    const int x_hi = std::min(w - 1, static_cast<int>(std::ceil(cx + radius)));
    const int y_lo = std::max(0, static_cast<int>(std::floor(cy - radius)));
    const int y_hi = std::min(h - 1, static_cast<int>(std::ceil(cy + radius)));
    for (int y = y_lo; y <= y_hi; ++y) {
      for (int x = x_lo; x <= x_hi; ++x) {
        const double dx = x - cx;
        const double dy = y - cy;
        if (dx * dx + dy * dy > r2) continue;
        std::uint8_t& cell = masked[static_cast<std::size_t>(y) * w + x];
        if (!cell) {
          cell = 1;
          ++covered;
        }
      }
    }
    ++blobs;
  }

  const float fill_value = fill == MissingFill::InvalidZero ? 0.0f : frame.valid_max();
  DepthFrame out = frame;
  for (std::size_t i = 0; i < total; ++i) {
    if (masked[i]) out.values()[i] = fill_value;
  }
  return out;
}

std::vector<std::uint8_t> edge_mask(const DepthFrame& frame, double threshold_m) {
  const int w = frame.width();
  const int h = frame.height();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 0);
  constexpr int kNeighbors[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float v = frame.at(x, y);
      if (v <= 0.0f) continue;
      for (const auto& n : kNeighbors) {
        const int nx = x + n[0];
        const int ny = y + n[1];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const float nv = frame.at(nx, ny);
        if (nv <= 0.0f) continue;
        if (std::fabs(static_cast<double>(v) - nv) > threshold_m) {
          mask[static_cast<std::size_t>(y) * w + x] = 1;
          break;
        }
      }
    }
  }
  return mask;
}

std::vector<std::uint8_t> dilate_disk(const std::vector<std::uint8_t>& mask,
                                      int width, int height, int radius) {
  std::vector<std::uint8_t> out(mask.size(), 0);
  const int r2 = radius * radius;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!mask[static_cast<std::size_t>(y) * width + x]) continue;
      const int y_lo = std::max(0, y - radius);
      const int y_hi = std::min(height - 1, y + radius);
      const int x_lo = std::max(0, x - radius);
      const int x_hi = std::min(width - 1, x + radius);
      for (int yy = y_lo; yy <= y_hi; ++yy) {
        for (int xx = x_lo; xx <= x_hi; ++xx) {
          const int dx = xx - x;
          const int dy = yy - y;
          if (dx * dx + dy * dy <= r2) {
            out[static_cast<std::size_t>(yy) * width + xx] = 1;
          }
        }
      }
    }
  }
  return out;
}

DepthFrame multipath_echo(const DepthFrame& frame, Severity s, RandomStream& rng) {
  const double sv = s.value();
  const int dilate_radius =
      schedule::kEchoDilateBase +
      static_cast<int>(round_away(schedule::kEchoDilateGain * sv));

  const auto edges = edge_mask(frame, schedule::kEdgeThreshold);
  const auto band = dilate_disk(edges, frame.width(), frame.height(), dilate_radius);

  DepthFrame out = frame;
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (!band[i]) continue;
    const float v = out.values()[i];
    if (v <= 0.0f) continue;  // echoes never resurrect missing readings
    const double jitter = rng.uniform(0.0, schedule::kEchoJitterMax);
    const double bias = sv * schedule::kEchoBias * (1.0 + jitter);
    out.values()[i] = clamp_depth(v + bias, frame.valid_max());
  }
  return out;
}

DepthFrame quantize(const DepthFrame& frame, Severity s) {
  const int bits = static_cast<int>(
      round_away(schedule::kBitsBase - schedule::kBitsDrop * s.value()));
  const double levels = std::ldexp(1.0, bits) - 1.0;  // 2^bits - 1
  const double step = frame.valid_max() / levels;

  DepthFrame out = frame;
  for (float& v : out.values()) {
    v = clamp_depth(round_away(v / step) * step, frame.valid_max());
  }
  return out;
}

DepthFrame apply(CorruptionKind kind, const DepthFrame& frame, Severity s,
                 RandomStream& rng, MissingFill fill) {
  switch (kind) {
    case CorruptionKind::DepthGaussian: return gaussian_noise(frame, s, rng);
    case CorruptionKind::DepthMissing: return missing_data(frame, s, rng, fill);
    case CorruptionKind::DepthMultipath: return multipath_echo(frame, s, rng);
    case CorruptionKind::DepthQuantization: return quantize(frame, s);
    default:
      throw ValidationError("not a depth corruption: " +
                            std::string(to_string(kind)));
  }
}

}  // namespace navtrust::depth
