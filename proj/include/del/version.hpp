#pragma once

namespace del {

inline constexpr const char* kToolVersion = "1.0.0";

// Bumped whenever the JSON report layout changes.
inline constexpr const char* kReportSchema = "del-report/1";

}  // namespace del
