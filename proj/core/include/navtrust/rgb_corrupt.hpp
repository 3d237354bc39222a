#pragma once

#include "navtrust/rng.hpp"
#include "navtrust/types.hpp"

namespace navtrust::rgb {

// Severity-to-parameter schedule for the whole RGB suite. Every transform
// reads its constants from here; recalibrating the suite is a data change.
namespace schedule {
// motion blur: taps k = 2*round(kBlurTapBase + kBlurTapGain*s) + 1, blend = s
inline constexpr double kBlurTapBase = 1.0;
inline constexpr double kBlurTapGain = 9.0;
// low light: scale = 1 - s*(kDarkenFloor + kDarkenGain*g)
inline constexpr double kDarkenFloor = 0.3;
inline constexpr double kDarkenGain = 0.7;
// sensor noise: full-well proxy N_sat = kFullWell*(1 - kFullWellDrop*s),
// read-noise scale = kReadBase + kReadGain*s electrons (Tukey lambda
// kReadLambda), row noise sigma = kRowBase + kRowGain*s electrons
inline constexpr double kFullWell = 800.0;
inline constexpr double kFullWellDrop = 0.75;
inline constexpr double kReadLambda = -0.1;
inline constexpr double kReadBase = 2.0;
inline constexpr double kReadGain = 10.0;
inline constexpr double kRowBase = 1.0;
inline constexpr double kRowGain = 4.0;
// spatter: blobs N = round(kBlobBase + kBlobGain*s), radius in
// [kBlobRadiusMin, kBlobRadiusMin + kBlobRadiusGain*s], alpha kBlobAlpha,
// gray level uniform in [kBlobGrayLo, kBlobGrayHi]
inline constexpr double kBlobBase = 5.0;
inline constexpr double kBlobGain = 45.0;
inline constexpr double kBlobRadiusMin = 2.0;
inline constexpr double kBlobRadiusGain = 10.0;
inline constexpr double kBlobAlpha = 0.6;
inline constexpr double kBlobGrayLo = 40.0;
inline constexpr double kBlobGrayHi = 220.0;
// flare: radius = min(H,W)*(kFlareRadiusBase + kFlareRadiusGain*s),
// intensity = kFlareIntensity*s
inline constexpr double kFlareRadiusBase = 0.3;
inline constexpr double kFlareRadiusGain = 0.4;
inline constexpr double kFlareIntensity = 0.8;
// defocus: sigma uniform in [kDefocusSigmaMin, kDefocusSigmaMin + kDefocusSigmaGain*s]
inline constexpr double kDefocusSigmaMin = 0.5;
inline constexpr double kDefocusSigmaGain = 5.0;
// foreign object: disk radius = round(min(H,W)*(kOccluderBase + kOccluderGain*s))
inline constexpr double kOccluderBase = 0.05;
inline constexpr double kOccluderGain = 0.25;
}  // namespace schedule

/// Directional blur: blend of the frame with a k-tap box kernel sampled
/// along a random orientation. Identity at s = 0.
RgbFrame motion_blur(const RgbFrame& frame, Severity s, RandomStream& rng);
RgbFrame motion_blur_with_angle(const RgbFrame& frame, Severity s,
                                double angle_radians);

enum class GradientDirection {
  Right,
  Left,
  Down,
  Up,
  DownRight,
  DownLeft,
  UpRight,
  UpLeft,
};

/// Planar gradient darkening; direction drawn uniformly from the eight
/// axis/diagonal directions. Identity at s = 0.
RgbFrame low_light(const RgbFrame& frame, Severity s, RandomStream& rng);
RgbFrame low_light_with_direction(const RgbFrame& frame, Severity s,
                                  GradientDirection direction);

/// Stage toggles for the sensor-noise pipeline; tests disable stages to
/// isolate each noise source.
struct NoiseStages {
  bool darken = true;
  bool shot = true;
  bool read = true;
  bool row = true;
};

/// Low light plus a CMOS noise stack: Poisson shot noise, Tukey-lambda read
/// noise, per-row Gaussian offsets, and the implicit quantization of the
/// final rounding.
RgbFrame low_light_noise(const RgbFrame& frame, Severity s, RandomStream& rng);
RgbFrame low_light_noise_staged(const RgbFrame& frame, Severity s,
                                RandomStream& rng, const NoiseStages& stages);

/// Gray disk blobs alpha-composited over the frame.
RgbFrame spatter(const RgbFrame& frame, Severity s, RandomStream& rng);

/// Radial push toward white around a random center. Identity at s = 0.
RgbFrame flare(const RgbFrame& frame, Severity s, RandomStream& rng);
RgbFrame flare_at(const RgbFrame& frame, Severity s, double center_x,
                  double center_y);

/// Isotropic Gaussian blur with a randomized width.
RgbFrame defocus(const RgbFrame& frame, Severity s, RandomStream& rng);
RgbFrame defocus_with_sigma(const RgbFrame& frame, double sigma);

/// Black disk at the frame center. Deterministic; idempotent.
RgbFrame foreign_object(const RgbFrame& frame, Severity s);

/// Replaces the whole frame with black with probability s. Identity at
/// s = 0, always black at s = 1.
RgbFrame black_out(const RgbFrame& frame, Severity s, RandomStream& rng);

/// Dispatch by kind; `kind` must be one of the eight RGB kinds.
RgbFrame apply(CorruptionKind kind, const RgbFrame& frame, Severity s,
               RandomStream& rng);

}  // namespace navtrust::rgb
