#pragma once

namespace obh {

inline constexpr const char* schema_version = "obh/1";
inline constexpr const char* library_version = "1.0.0";

} // namespace obh
