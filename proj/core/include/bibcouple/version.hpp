#pragma once

namespace bibcouple {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bibcouple
