#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace slt {

/// Empty, real, integer or text.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws InvalidArgument if the row width differs from the header.
  void add_row(std::vector<Cell> row);
  std::size_t column(const std::string& name) const;
};

/// Header row, comma separated, LF endings, reals with 17 significant digits.
void write_csv(std::ostream& out, const Table& table);

/// Array of objects keyed by column; empty cells and non-finite reals are null.
void write_json(std::ostream& out, const Table& table);

std::string format_real(double v);

}  // namespace slt
