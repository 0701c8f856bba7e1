#pragma once

namespace lqw {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace lqw
