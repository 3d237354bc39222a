#include "navtrust/rgb_corrupt.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace navtrust::rgb {

namespace {

using schedule::kBlobAlpha;
using schedule::kBlobBase;
using schedule::kBlobGain;
using schedule::kBlobGrayHi;
using schedule::kBlobGrayLo;
using schedule::kBlobRadiusGain;
using schedule::kBlobRadiusMin;
using schedule::kBlurTapBase;
using schedule::kBlurTapGain;
using schedule::kDarkenFloor;
using schedule::kDarkenGain;
using schedule::kDefocusSigmaGain;
using schedule::kDefocusSigmaMin;
using schedule::kFlareIntensity;
using schedule::kFlareRadiusBase;
using schedule::kFlareRadiusGain;
using schedule::kFullWell;
using schedule::kFullWellDrop;
using schedule::kOccluderBase;
using schedule::kOccluderGain;
using schedule::kReadBase;
using schedule::kReadGain;
using schedule::kReadLambda;
using schedule::kRowBase;
using schedule::kRowGain;

int clamp_coord(int v, int hi) { return std::clamp(v, 0, hi); }

// Bilinear read with clamp-to-edge borders.
double sample_bilinear(const RgbFrame& frame, double fx, double fy, int c) {
  const int x0 = static_cast<int>(std::floor(fx));
  const int y0 = static_cast<int>(std::floor(fy));
  const double wx = fx - x0;
  const double wy = fy - y0;
  const int xmax = frame.width() - 1;
  const int ymax = frame.height() - 1;
  const int x0c = clamp_coord(x0, xmax);
  const int x1c = clamp_coord(x0 + 1, xmax);
  const int y0c = clamp_coord(y0, ymax);
  const int y1c = clamp_coord(y0 + 1, ymax);
  const double top = (1.0 - wx) * frame.at(x0c, y0c, c) + wx * frame.at(x1c, y0c, c);
  const double bot = (1.0 - wx) * frame.at(x0c, y1c, c) + wx * frame.at(x1c, y1c, c);
  return (1.0 - wy) * top + wy * bot;
}

struct DirVec {
  double x;
  double y;
};

DirVec direction_vector(GradientDirection d) {
  switch (d) {
    case GradientDirection::Right: return {1.0, 0.0};
    case GradientDirection::Left: return {-1.0, 0.0};
    case GradientDirection::Down: return {0.0, 1.0};
    case GradientDirection::Up: return {0.0, -1.0};
    case GradientDirection::DownRight: return {1.0, 1.0};
    case GradientDirection::DownLeft: return {-1.0, 1.0};
    case GradientDirection::UpRight: return {1.0, -1.0};
    case GradientDirection::UpLeft: return {-1.0, -1.0};
  }
  throw ValidationError("unknown gradient direction");
}

// Tukey lambda quantile, Q(p) = (p^l - (1-p)^l) / l. Heavy-tailed for l < 0.
double tukey_lambda_quantile(double p, double lambda) {
  return (std::pow(p, lambda) - std::pow(1.0 - p, lambda)) / lambda;
}

}  // namespace

RgbFrame motion_blur_with_angle(const RgbFrame& frame, Severity s,
                                double angle_radians) {
  const double sv = s.value();
  const double blend = sv;
  if (blend == 0.0) return frame;

  const int half = static_cast<int>(round_away(kBlurTapBase + kBlurTapGain * sv));
  const int taps = 2 * half + 1;
  const double dx = std::cos(angle_radians);
  const double dy = std::sin(angle_radians);

  RgbFrame out(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        double sum = 0.0;
        for (int i = -half; i <= half; ++i) {
          sum += sample_bilinear(frame, x + i * dx, y + i * dy, c);
        }
        const double blurred = sum / taps;
        out.at(x, y, c) =
            to_channel((1.0 - blend) * frame.at(x, y, c) + blend * blurred);
      }
    }
  }
  return out;
}

RgbFrame motion_blur(const RgbFrame& frame, Severity s, RandomStream& rng) {
  const double angle = rng.uniform(0.0, M_PI);
  return motion_blur_with_angle(frame, s, angle);
}

RgbFrame low_light_with_direction(const RgbFrame& frame, Severity s,
                                  GradientDirection direction) {
  const double sv = s.value();
  const DirVec d = direction_vector(direction);

  // Normalize the projection over the frame's corners so g spans [0, 1].
  const double xmax = frame.width() - 1;
  const double ymax = frame.height() - 1;
  double pmin = 0.0, pmax = 0.0;
  bool first = true;
  for (double cx : {0.0, xmax}) {
    for (double cy : {0.0, ymax}) {
      const double p = d.x * cx + d.y * cy;
      pmin = first ? p : std::min(pmin, p);
      pmax = first ? p : std::max(pmax, p);
      first = false;
    }
  }
  const double span = pmax - pmin;

  RgbFrame out(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const double proj = d.x * x + d.y * y;
      const double g = span > 0.0 ? (proj - pmin) / span : 0.0;
      const double scale = 1.0 - sv * (kDarkenFloor + kDarkenGain * g);
      for (int c = 0; c < 3; ++c) {
        out.at(x, y, c) = to_channel(frame.at(x, y, c) * scale);
      }
    }
  }
  return out;
}

RgbFrame low_light(const RgbFrame& frame, Severity s, RandomStream& rng) {
  const auto direction = static_cast<GradientDirection>(rng.below(8));
  return low_light_with_direction(frame, s, direction);
}

RgbFrame low_light_noise_staged(const RgbFrame& frame, Severity s,
                                RandomStream& rng, const NoiseStages& stages) {
  const double sv = s.value();
  const RgbFrame darkened = stages.darken ? low_light(frame, s, rng) : frame;

  const double full_well = kFullWell * (1.0 - kFullWellDrop * sv);
  const double read_scale = kReadBase + kReadGain * sv;
  const double row_sigma = kRowBase + kRowGain * sv;
  const double to_electrons = full_well / 255.0;
  const double to_gray = 255.0 / full_well;

  std::vector<double> row_offset(frame.height(), 0.0);
  if (stages.row) {
    for (double& offset : row_offset) offset = rng.normal(0.0, row_sigma);
  }

  RgbFrame out(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        double electrons = darkened.at(x, y, c) * to_electrons;
        if (stages.shot) {
          electrons = static_cast<double>(rng.poisson(electrons));
        }
        if (stages.read) {
          electrons +=
              read_scale * tukey_lambda_quantile(rng.open_double(), kReadLambda);
        }
        electrons += row_offset[y];
        out.at(x, y, c) = to_channel(electrons * to_gray);
      }
    }
  }
  return out;
}

RgbFrame low_light_noise(const RgbFrame& frame, Severity s, RandomStream& rng) {
  return low_light_noise_staged(frame, s, rng, NoiseStages{});
}

RgbFrame spatter(const RgbFrame& frame, Severity s, RandomStream& rng) {
  const double sv = s.value();
  const int blobs = static_cast<int>(round_away(kBlobBase + kBlobGain * sv));

  struct Blob {
    double cx, cy, radius, gray;
  };
  std::vector<Blob> params(blobs);
  for (Blob& b : params) {
    b.cx = rng.uniform(0.0, frame.width());
    b.cy = rng.uniform(0.0, frame.height());
    b.radius = rng.uniform(kBlobRadiusMin, kBlobRadiusMin + kBlobRadiusGain * sv);
    b.gray = rng.uniform(kBlobGrayLo, kBlobGrayHi);
  }

  RgbFrame out = frame;
  for (const Blob& b : params) {
    const int x_lo = std::max(0, static_cast<int>(std::floor(b.cx - b.radius)));
    const int x_hi = std::min(frame.width() - 1,
                              static_cast<int>(std::ceil(b.cx + b.radius)));
    const int y_lo = std::max(0, static_cast<int>(std::floor(b.cy - b.radius)));
    const int y_hi = std::min(frame.height() - 1,
                              static_cast<int>(std::ceil(b.cy + b.radius)));
    const double r2 = b.radius * b.radius;
    for (int y = y_lo; y <= y_hi; ++y) {
      for (int x = x_lo; x <= x_hi; ++x) {
        const double dx = x - b.cx;
        const double dy = y - b.cy;
        if (dx * dx + dy * dy > r2) continue;
        for (int c = 0; c < 3; ++c) {
          out.at(x, y, c) = to_channel((1.0 - kBlobAlpha) * out.at(x, y, c) +
                                       kBlobAlpha * b.gray);
        }
      }
    }
  }
  return out;
}

RgbFrame flare_at(const RgbFrame& frame, Severity s, double center_x,
                  double center_y) {
  const double sv = s.value();
  const double intensity = kFlareIntensity * sv;
  if (intensity == 0.0) return frame;

  const double radius = std::min(frame.height(), frame.width()) *
                        (kFlareRadiusBase + kFlareRadiusGain * sv);
  RgbFrame out(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const double dist = std::hypot(x - center_x, y - center_y);
      const double falloff = std::max(0.0, 1.0 - dist / radius);
      const double push = intensity * falloff * falloff;
      for (int c = 0; c < 3; ++c) {
        const double v = frame.at(x, y, c);
        out.at(x, y, c) = to_channel(v + (255.0 - v) * push);
      }
    }
  }
  return out;
}

RgbFrame flare(const RgbFrame& frame, Severity s, RandomStream& rng) {
  const double cx = rng.uniform(0.0, frame.width());
  const double cy = rng.uniform(0.0, frame.height());
  return flare_at(frame, s, cx, cy);
}

RgbFrame defocus_with_sigma(const RgbFrame& frame, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double norm = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    norm += kernel[i + radius];
  }
  for (double& k : kernel) k /= norm;

  const int w = frame.width();
  const int h = frame.height();
  const int xmax = w - 1;
  const int ymax = h - 1;

  // Two separable passes; rounding happens once, after the vertical pass.
  std::vector<double> horizontal(static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double sum = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          sum += kernel[i + radius] * frame.at(clamp_coord(x + i, xmax), y, c);
        }
        horizontal[(static_cast<std::size_t>(y) * w + x) * 3 + c] = sum;
      }
    }
  }

  RgbFrame out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double sum = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          const int yy = clamp_coord(y + i, ymax);
          sum += kernel[i + radius] *
                 horizontal[(static_cast<std::size_t>(yy) * w + x) * 3 + c];
        }
        out.at(x, y, c) = to_channel(sum);
      }
    }
  }
  return out;
}

RgbFrame defocus(const RgbFrame& frame, Severity s, RandomStream& rng) {
  const double sigma =
      rng.uniform(kDefocusSigmaMin, kDefocusSigmaMin + kDefocusSigmaGain * s.value());
  return defocus_with_sigma(frame, sigma);
}

RgbFrame foreign_object(const RgbFrame& frame, Severity s) {
  const double fraction = kOccluderBase + kOccluderGain * s.value();
  const double radius = round_away(std::min(frame.height(), frame.width()) * fraction);
  const double cx = frame.width() / 2.0;
  const double cy = frame.height() / 2.0;
  const double r2 = radius * radius;

  RgbFrame out = frame;
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      if (dx * dx + dy * dy > r2) continue;
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = 0;
    }
  }
  return out;
}

RgbFrame black_out(const RgbFrame& frame, Severity s, RandomStream& rng) {
  if (rng.next_double() < s.value()) {
    return RgbFrame(frame.width(), frame.height());
  }
  return frame;
}

RgbFrame apply(CorruptionKind kind, const RgbFrame& frame, Severity s,
               RandomStream& rng) {
  switch (kind) {
    case CorruptionKind::MotionBlur: return motion_blur(frame, s, rng);
    case CorruptionKind::LowLight: return low_light(frame, s, rng);
    case CorruptionKind::LowLightNoise: return low_light_noise(frame, s, rng);
    case CorruptionKind::Spatter: return spatter(frame, s, rng);
    case CorruptionKind::Flare: return flare(frame, s, rng);
    case CorruptionKind::Defocus: return defocus(frame, s, rng);
    case CorruptionKind::ForeignObject: return foreign_object(frame, s);
    case CorruptionKind::BlackOut: return black_out(frame, s, rng);
    default:
      throw ValidationError("not an RGB corruption: " +
                            std::string(to_string(kind)));
  }
}

}  // namespace navtrust::rgb
