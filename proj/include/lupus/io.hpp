#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace lupus {

/// Write `content` to a sibling temp file and rename it over `path`, so
/// readers never observe a partial file. Creates parent directories.
/// Throws IoError on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Throws IoError when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace lupus
