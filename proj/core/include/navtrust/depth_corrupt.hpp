#pragma once

#include <vector>

#include "navtrust/rng.hpp"
#include "navtrust/types.hpp"

namespace navtrust::depth {

// Severity-to-parameter schedule for the depth suite.
namespace schedule {
// jitter: sigma = kJitterSigmaGain * s meters (absolute, not range-scaled)
inline constexpr double kJitterSigmaGain = 0.25;
// missing data: mask pixels until coverage >= kCoverageGain * s, blob radius
// uniform in [kHoleRadiusMin, kHoleRadiusMin + kHoleRadiusGain*s] px
inline constexpr double kCoverageGain = 0.4;
inline constexpr double kHoleRadiusMin = 3.0;
inline constexpr double kHoleRadiusGain = 15.0;
inline constexpr int kMaxHoleBlobs = 200;
// multipath: edge threshold, dilation width w = kEchoDilateBase +
// round(kEchoDilateGain*s), bias = s * kEchoBias * (1 + u) meters, u~U[0,.5]
inline constexpr double kEdgeThreshold = 0.3;
inline constexpr int kEchoDilateBase = 3;
inline constexpr double kEchoDilateGain = 5.0;
inline constexpr double kEchoBias = 0.4;
inline constexpr double kEchoJitterMax = 0.5;
// quantization: bits b = round(kBitsBase - kBitsDrop*s)
inline constexpr double kBitsBase = 8.0;
inline constexpr double kBitsDrop = 6.0;
}  // namespace schedule

/// What masked pixels become under missing-data corruption.
enum class MissingFill {
  InvalidZero,   // dropouts read as 0 = "no return"
  SaturateMax,   // dropouts read as the sensor ceiling
};

/// Additive Gaussian jitter on valid pixels; invalid (0) pixels stay 0.
DepthFrame gaussian_noise(const DepthFrame& frame, Severity s, RandomStream& rng);

/// Contiguous disk-blob dropouts covering about kCoverageGain*s of the frame.
DepthFrame missing_data(const DepthFrame& frame, Severity s, RandomStream& rng,
                        MissingFill fill = MissingFill::InvalidZero);

/// Positive range bias in a band around depth discontinuities.
DepthFrame multipath_echo(const DepthFrame& frame, Severity s, RandomStream& rng);

/// Snap to a low-bit grid over [0, valid_max]. Deterministic.
DepthFrame quantize(const DepthFrame& frame, Severity s);

/// Dispatch by kind; `kind` must be one of the four depth kinds.
DepthFrame apply(CorruptionKind kind, const DepthFrame& frame, Severity s,
                 RandomStream& rng, MissingFill fill = MissingFill::InvalidZero);

/// Pixels whose depth differs from a 4-neighbor by more than threshold_m.
/// Differences against invalid (0) pixels are ignored.
std::vector<std::uint8_t> edge_mask(const DepthFrame& frame, double threshold_m);

/// Binary dilation with a disk structuring element of the given radius.
std::vector<std::uint8_t> dilate_disk(const std::vector<std::uint8_t>& mask,
                                      int width, int height, int radius);

}  // namespace navtrust::depth
