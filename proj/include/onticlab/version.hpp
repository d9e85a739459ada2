#pragma once

namespace onticlab {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace onticlab
