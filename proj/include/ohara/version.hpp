#pragma once

namespace ohara {

inline constexpr const char* kVersion = "0.1.0";

} // namespace ohara
