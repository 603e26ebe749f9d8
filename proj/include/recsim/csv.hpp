#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace recsim {

/// Shortest decimal text that parses back to the same double ("0.1", "75", "-0.5").
std::string format_double(double value);
std::string format_optional(const std::optional<double>& value);  // empty field when missing

/// Strict full-field parse; throws ConfigError on trailing garbage.
double parse_double(std::string_view text);
std::optional<double> parse_optional(std::string_view text);

/// Splits one CSV line on commas. Fields never contain commas or quotes in this project's tables.
std::vector<std::string> split_csv_line(std::string_view line);

/// Writes `contents` to a temporary sibling and renames it over `path`. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace recsim
