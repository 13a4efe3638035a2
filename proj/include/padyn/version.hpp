#pragma once

namespace padyn {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace padyn
