#pragma once

namespace tailwave {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tailwave
