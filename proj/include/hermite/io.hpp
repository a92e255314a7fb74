#pragma once

#include <filesystem>
#include <string>

namespace hermite::io {

/// Shortest-stable decimal form with 17 significant digits ("%.17g").
std::string fmt17(double v);

/// Writes `content` to a sibling temporary file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace hermite::io
