#pragma once

namespace dyham {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dyham
