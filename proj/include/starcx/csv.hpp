#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace starcx {

/// RFC 4180-style table with a mandatory header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv_file(const std::string& path);

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

/// Twelve significant digits, '.' decimal point, independent of locale.
std::string format_real(double value);

}  // namespace starcx
