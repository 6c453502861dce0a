#pragma once

namespace harqr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace harqr
