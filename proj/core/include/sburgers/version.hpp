#pragma once

namespace sburgers {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sburgers
