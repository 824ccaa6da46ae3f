#pragma once

namespace gly {

inline constexpr const char* kToolName = "glychaos";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace gly
