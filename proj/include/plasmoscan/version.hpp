#pragma once

namespace plasmoscan {

inline constexpr const char *kToolName = "plasmoscan";
inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr const char *kRngScheme = "splitmix64/mt19937_64";

}  // namespace plasmoscan
