#pragma once

namespace jnr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jnr
