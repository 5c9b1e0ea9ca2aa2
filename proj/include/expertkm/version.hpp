#pragma once

namespace expertkm {

inline constexpr const char* version = "0.1.0";

}  // namespace expertkm
