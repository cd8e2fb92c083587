#pragma once

namespace lossy {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lossy
