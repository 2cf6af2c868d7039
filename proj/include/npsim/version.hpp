#pragma once

namespace npsim {

inline constexpr const char* kToolName = "npsim";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace npsim
