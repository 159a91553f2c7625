#pragma once

namespace psmanip {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace psmanip
