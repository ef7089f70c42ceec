#pragma once

namespace slicereg {

inline constexpr const char* kVersion = "0.1.0";

} // namespace slicereg
