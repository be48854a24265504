#pragma once

namespace knng {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace knng
