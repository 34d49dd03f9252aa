#pragma once

namespace qdfs {

inline constexpr const char* tool_version = "0.1.0";

// File format tags are "<name>/<major>"; readers reject any major version
// they do not know.
inline constexpr const char* model_format_name = "qdfs-model";
inline constexpr int model_format_major = 1;
inline constexpr const char* report_format_name = "qdfs-report";
inline constexpr int report_format_major = 1;
inline constexpr const char* state_format_name = "qdfs-state";
inline constexpr int state_format_major = 1;

} // namespace qdfs
