#pragma once

namespace dayshift {

inline constexpr const char* kToolName = "dayshift";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace dayshift
