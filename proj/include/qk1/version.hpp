#pragma once

namespace qk1 {

inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr const char* kCacheFormatVersion = "v1";

}  // namespace qk1
