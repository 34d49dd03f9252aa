#pragma once

#include <string>

#include "qdfs/engine.hpp"

namespace qdfs {

// JSON analysis reports, format tag "qdfs-report/1". Serialization is
// lossless for doubles (shortest round-trip form), so
// parse_report(serialize_report(r)) reproduces r exactly.
std::string serialize_report(const AnalysisReport& r);
AnalysisReport parse_report(const std::string& text);
AnalysisReport load_report(const std::string& path);
void save_report(const AnalysisReport& r, const std::string& path);

} // namespace qdfs
