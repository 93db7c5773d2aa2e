#pragma once

#include <string>
#include <vector>

#include "noma/csv.hpp"

namespace noma::cli {

struct AxesSpec {
  std::string x_column;
  std::string y_column;
  /// Columns whose joined values name a series (one polyline per series).
  std::vector<std::string> series_columns;
  bool log_y = false;
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Values at or below zero are drawn at this floor on a log axis.
inline constexpr double kLogFloor = 1e-7;

/// SVG 1.1 line chart of `table`. Throws std::invalid_argument on an empty
/// table or missing columns. Output depends only on the inputs.
std::string render_svg(const CsvTable& table, const AxesSpec& axes);

}  // namespace noma::cli
