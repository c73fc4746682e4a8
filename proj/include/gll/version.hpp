#pragma once

namespace gll {

// Bump when any numeric code path changes; cache keys include this.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace gll
