#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace drillboom {

/// Shortest decimal text that parses back to the identical double.
std::string format_number(double value);
std::string format_number(long long value);

/// Minimal comma-separated writer; fields never contain commas or quotes.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<std::string>& fields);

  std::size_t columns() const { return header_.size(); }

 private:
  std::ostream& out_;
  std::vector<std::string> header_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws std::out_of_range when absent.
  std::size_t column_index(std::string_view name) const;
  std::vector<double> numeric_column(std::string_view name) const;
};

/// Parses text written by CsvWriter. Throws std::runtime_error on ragged rows.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

double parse_number(std::string_view text);

}  // namespace drillboom
