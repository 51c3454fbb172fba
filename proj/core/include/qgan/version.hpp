#pragma once

namespace qgan {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qgan
