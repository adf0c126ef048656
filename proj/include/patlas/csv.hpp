#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace patlas::csv {

// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF records.
std::vector<std::vector<std::string>> parse(std::string_view text);

std::string escape(std::string_view field);
std::string join_row(const std::vector<std::string>& fields);

// Fixed-point formatting with '.' as the decimal separator, locale-free.
std::string fixed(double value, int decimals);

std::string read_file(const std::filesystem::path& path);

// Writes via a sibling temporary file and rename, so readers never see a
// partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace patlas::csv
