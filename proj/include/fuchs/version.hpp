#pragma once

namespace fuchs {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

} // namespace fuchs
