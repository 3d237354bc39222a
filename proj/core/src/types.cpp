#include "navtrust/types.hpp"

#include <utility>

namespace navtrust {

namespace {

constexpr std::pair<CorruptionKind, std::string_view> kKindNames[] = {
    {CorruptionKind::MotionBlur, "motion_blur"},
    {CorruptionKind::LowLight, "low_light"},
    {CorruptionKind::LowLightNoise, "low_light_noise"},
    {CorruptionKind::Spatter, "spatter"},
    {CorruptionKind::Flare, "flare"},
    {CorruptionKind::Defocus, "defocus"},
    {CorruptionKind::ForeignObject, "foreign_object"},
    {CorruptionKind::BlackOut, "black_out"},
    {CorruptionKind::DepthGaussian, "depth_gaussian"},
    {CorruptionKind::DepthMissing, "depth_missing"},
    {CorruptionKind::DepthMultipath, "depth_multipath"},
    {CorruptionKind::DepthQuantization, "depth_quantization"},
    {CorruptionKind::StyleRewrite, "style_rewrite"},
    {CorruptionKind::Capitalize, "capitalize"},
    {CorruptionKind::Mask, "mask"},
    {CorruptionKind::BlackBoxPrompt, "black_box_prompt"},
    {CorruptionKind::WhiteBoxPrompt, "white_box_prompt"},
};

}  // namespace

bool is_rgb(CorruptionKind kind) {
  return kind >= CorruptionKind::MotionBlur && kind <= CorruptionKind::BlackOut;
}

bool is_depth(CorruptionKind kind) {
  return kind >= CorruptionKind::DepthGaussian &&
         kind <= CorruptionKind::DepthQuantization;
}

bool is_instruction(CorruptionKind kind) {
  return kind >= CorruptionKind::StyleRewrite &&
         kind <= CorruptionKind::WhiteBoxPrompt;
}

std::string_view to_string(CorruptionKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  throw ValidationError("unknown corruption kind");
}

CorruptionKind kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  std::string known;
  for (const auto& [k, n] : kKindNames) {
    known += n;
    known += ' ';
  }
  throw ValidationError("unknown corruption kind \"" + std::string(name) +
                        "\"; known kinds: " + known);
}

}  // namespace navtrust
