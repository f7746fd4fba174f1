#pragma once

#include <filesystem>
#include <string>

namespace gnflow {

/// Write-temp-then-rename, so partially written artifacts are never visible.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

/// Shortest round-trip decimal form of a double ("%.17g" trimmed).
std::string format_double(double x);

}  // namespace gnflow
