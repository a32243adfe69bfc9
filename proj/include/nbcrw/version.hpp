#pragma once

namespace nbcrw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nbcrw
