#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "navtrust/error.hpp"

namespace navtrust {

// Rounding is half-away-from-zero everywhere a real becomes a stored sample,
// so corrupted outputs are bit-stable across compilers and platforms.
inline double round_away(double v) { return std::round(v); }

// Round + clamp a real to an 8-bit channel value.
inline std::uint8_t to_channel(double v) {
  const double r = std::round(v);
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

/// Corruption intensity in [0, 1]. 0 is (near-)identity, 1 is maximally
/// destructive; the benchmark default is 0.5.
class Severity {
 public:
  explicit Severity(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ValidationError("severity must lie in [0, 1], got " +
                            std::to_string(value));
    }
  }

  double value() const { return value_; }

 private:
  double value_;
};

/// 8-bit RGB raster, row-major, 3 interleaved channels.
class RgbFrame {
 public:
  RgbFrame(int width, int height)
      : width_(width), height_(height), pixels_(pixel_bytes(width, height), 0) {}

  RgbFrame(int width, int height, std::vector<std::uint8_t> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != pixel_bytes(width, height)) {
      throw ValidationError("rgb frame pixel count does not match " +
                            std::to_string(width) + "x" + std::to_string(height));
    }
  }

  static RgbFrame filled(int width, int height, std::array<std::uint8_t, 3> rgb) {
    RgbFrame f(width, height);
    for (std::size_t i = 0; i < f.pixels_.size(); i += 3) {
      f.pixels_[i] = rgb[0];
      f.pixels_[i + 1] = rgb[1];
      f.pixels_[i + 2] = rgb[2];
    }
    return f;
  }

  int width() const { return width_; }
  int height() const { return height_; }

  std::uint8_t at(int x, int y, int channel) const {
    return pixels_[index(x, y, channel)];
  }
  std::uint8_t& at(int x, int y, int channel) {
    return pixels_[index(x, y, channel)];
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  bool operator==(const RgbFrame&) const = default;

 private:
  static std::size_t pixel_bytes(int width, int height) {
    if (width < 1 || height < 1) {
      throw ValidationError("frame dimensions must be at least 1x1");
    }
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
  }

  std::size_t index(int x, int y, int channel) const {
    return (static_cast<std::size_t>(y) * width_ + x) * 3 + channel;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Metric depth raster in meters. Value 0 marks an invalid / missing reading;
/// valid readings lie in (0, valid_max].
class DepthFrame {
 public:
  DepthFrame(int width, int height, float valid_max)
      : width_(width),
        height_(height),
        valid_max_(valid_max),
        values_(cell_count(width, height), 0.0f) {
    check_ceiling();
  }

  DepthFrame(int width, int height, std::vector<float> values, float valid_max)
      : width_(width),
        height_(height),
        valid_max_(valid_max),
        values_(std::move(values)) {
    check_ceiling();
    if (values_.size() != cell_count(width, height)) {
      throw ValidationError("depth frame value count does not match " +
                            std::to_string(width) + "x" + std::to_string(height));
    }
    for (float v : values_) {
      if (!(v >= 0.0f && v <= valid_max_)) {
        throw ValidationError("depth value outside [0, valid_max]");
      }
    }
  }

  static DepthFrame filled(int width, int height, float depth, float valid_max) {
    DepthFrame f(width, height, valid_max);
    for (float& v : f.values_) v = depth;
    if (!(depth >= 0.0f && depth <= valid_max)) {
      throw ValidationError("depth value outside [0, valid_max]");
    }
    return f;
  }

  int width() const { return width_; }
  int height() const { return height_; }
  float valid_max() const { return valid_max_; }

  float at(int x, int y) const { return values_[index(x, y)]; }
  float& at(int x, int y) { return values_[index(x, y)]; }
  bool valid_at(int x, int y) const { return values_[index(x, y)] > 0.0f; }

  std::span<const float> values() const { return values_; }
  std::span<float> values() { return values_; }

  bool operator==(const DepthFrame&) const = default;

 private:
  static std::size_t cell_count(int width, int height) {
    if (width < 1 || height < 1) {
      throw ValidationError("frame dimensions must be at least 1x1");
    }
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  void check_ceiling() const {
    if (!(valid_max_ > 0.0f)) {
      throw ValidationError("depth valid_max must be positive");
    }
  }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_;
  int height_;
  float valid_max_;
  std::vector<float> values_;
};

/// Every corruption the benchmark can apply. Sensor kinds map 1:1 onto the
/// transforms in rgb_corrupt / depth_corrupt; instruction kinds onto
/// text_corrupt manipulations.
enum class CorruptionKind {
  MotionBlur,
  LowLight,
  LowLightNoise,
  Spatter,
  Flare,
  Defocus,
  ForeignObject,
  BlackOut,
  DepthGaussian,
  DepthMissing,
  DepthMultipath,
  DepthQuantization,
  StyleRewrite,
  Capitalize,
  Mask,
  BlackBoxPrompt,
  WhiteBoxPrompt,
};

inline constexpr std::array<CorruptionKind, 8> kRgbKinds = {
    CorruptionKind::MotionBlur,    CorruptionKind::LowLight,
    CorruptionKind::LowLightNoise, CorruptionKind::Spatter,
    CorruptionKind::Flare,         CorruptionKind::Defocus,
    CorruptionKind::ForeignObject, CorruptionKind::BlackOut,
};

inline constexpr std::array<CorruptionKind, 4> kDepthKinds = {
    CorruptionKind::DepthGaussian,
    CorruptionKind::DepthMissing,
    CorruptionKind::DepthMultipath,
    CorruptionKind::DepthQuantization,
};

inline constexpr std::array<CorruptionKind, 5> kInstructionKinds = {
    CorruptionKind::StyleRewrite,   CorruptionKind::Capitalize,
    CorruptionKind::Mask,           CorruptionKind::BlackBoxPrompt,
    CorruptionKind::WhiteBoxPrompt,
};

inline constexpr std::array<CorruptionKind, 12> kSensorKinds = {
    CorruptionKind::MotionBlur,    CorruptionKind::LowLight,
    CorruptionKind::LowLightNoise, CorruptionKind::Spatter,
    CorruptionKind::Flare,         CorruptionKind::Defocus,
    CorruptionKind::ForeignObject, CorruptionKind::BlackOut,
    CorruptionKind::DepthGaussian, CorruptionKind::DepthMissing,
    CorruptionKind::DepthMultipath, CorruptionKind::DepthQuantization,
};

bool is_rgb(CorruptionKind kind);
bool is_depth(CorruptionKind kind);
bool is_instruction(CorruptionKind kind);

std::string_view to_string(CorruptionKind kind);
CorruptionKind kind_from_string(std::string_view name);

}  // namespace navtrust
