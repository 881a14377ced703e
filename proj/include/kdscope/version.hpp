#pragma once

namespace kdscope {
inline constexpr const char* kToolName = "kdscope";
inline constexpr const char* kVersion = "1.0.0";
}  // namespace kdscope
