#pragma once

namespace vacpol {

inline constexpr const char *kToolName = "vacpol";
inline constexpr const char *kVersion = "0.1.0";

} // namespace vacpol
