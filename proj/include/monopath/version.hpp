#pragma once

namespace monopath {

inline constexpr const char* kVersion = "0.1.0";

} // namespace monopath
