#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace defectpred::csvio {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Reads a comma-separated file with a header row. Handles double-quoted
/// fields, CRLF line endings, and skips lines starting with '#'.
Table read_table(const std::filesystem::path& file);

/// Quotes a field if it contains a comma, quote, or newline.
std::string escape_field(const std::string& field);

/// Fixed, locale-independent formatting so identical doubles always
/// serialize to identical bytes.
std::string format_double(double value);

/// Writes content atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& file, const std::string& content);

}  // namespace defectpred::csvio
