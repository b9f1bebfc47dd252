#pragma once

namespace derange {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace derange
