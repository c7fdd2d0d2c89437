#pragma once

namespace siegel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace siegel
