#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tdblda {

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
/// Strict parse of a full token; throws DecodeError on trailing garbage.
double parse_double(std::string_view token);
long long parse_integer(std::string_view token);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s) noexcept;

/// Writes to a sibling temporary file, then renames over `path`, so readers
/// never observe a truncated file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace tdblda
