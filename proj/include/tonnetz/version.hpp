#pragma once

namespace tonnetz {

inline constexpr const char* kVersion = "0.1.0";

} // namespace tonnetz
