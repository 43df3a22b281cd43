#pragma once

namespace glint {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace glint
