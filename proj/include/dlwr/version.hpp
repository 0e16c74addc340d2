#pragma once

namespace dlwr {

inline constexpr const char* version_string = "dlwr 1.0.0";

}  // namespace dlwr
