#pragma once

namespace wickgraph {

inline constexpr const char* kToolName = "wickgraph";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace wickgraph
