#pragma once

namespace sterr {

inline constexpr const char* kToolName = "sterr";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace sterr
