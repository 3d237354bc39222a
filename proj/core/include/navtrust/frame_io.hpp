#pragma once

#include <filesystem>

#include "navtrust/types.hpp"

namespace navtrust::io {

/// 8-bit RGB PNG. Gray/palette/alpha inputs are expanded to plain RGB on
/// load.
RgbFrame load_rgb_png(const std::filesystem::path& path);
void save_rgb_png(const RgbFrame& frame, const std::filesystem::path& path);

/// Depth interchange formats, selected by extension:
///   .png   16-bit grayscale, millimeters; 0 = invalid reading
///   .df32  raw float32 meters, 16-byte header (magic "NAVDF32\0",
///          u32 width, u32 height, little-endian), row-major values
DepthFrame load_depth(const std::filesystem::path& path, float valid_max);
void save_depth(const DepthFrame& frame, const std::filesystem::path& path);

}  // namespace navtrust::io
