#pragma once

namespace pitr {

inline constexpr const char* version_string = "pitr 1.0.0";
inline constexpr int version_major = 1;
inline constexpr int version_minor = 0;
inline constexpr int version_patch = 0;

}
