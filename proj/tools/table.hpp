#pragma once

// Column-oriented result table with fixed-precision CSV and JSON writers.

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace statatom::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string figure;  // content of the "# figure:" comment line
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Ten significant digits, '.' as decimal point, "inf"/"nan" spelled out.
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

}  // namespace statatom::cli
