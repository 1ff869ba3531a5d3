#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace schrospec {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

/// Minimal CSV: comma-separated, no quoting, first row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws ConfigError when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

double parse_double(std::string_view text);
int parse_int(std::string_view text);

}  // namespace schrospec
