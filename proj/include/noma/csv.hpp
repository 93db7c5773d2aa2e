#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace noma::cli {

using Cell = std::variant<std::string, double, std::int64_t>;

/// Numbers print with 6 significant digits ("%.6g").
std::string format_number(double value);
std::string format_cell(const Cell& cell);

class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Throws std::invalid_argument when the row width differs from the header.
  void add_row(std::vector<Cell> row);

  /// Index of a header column; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;

  double number(std::size_t row, std::size_t col) const;
  std::string text(std::size_t row, std::size_t col) const;

  std::string to_string() const;

  /// Parses CSV text. Cells that read as integers become int64, other
  /// numeric cells double, everything else string.
  static CsvTable parse(std::string_view text);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

/// Writes via a temporary file in the same directory and a rename, so
/// readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace noma::cli
