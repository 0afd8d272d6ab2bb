#pragma once

namespace convexkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace convexkit
