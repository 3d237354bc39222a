#pragma once

namespace navtrust {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace navtrust
