#pragma once

#include <filesystem>
#include <string_view>

namespace rsaudit {

/// Writes `content` to a sibling temp file and renames it over `path`. Throws IoError naming the path.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

void ensure_directory(const std::filesystem::path &dir);

}  // namespace rsaudit
