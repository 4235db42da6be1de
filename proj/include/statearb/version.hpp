#pragma once

#include <string_view>

namespace statearb {

inline constexpr std::string_view kToolName = "statearb";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace statearb
