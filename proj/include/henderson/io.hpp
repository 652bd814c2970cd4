#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "henderson/grid.hpp"

namespace henderson {

// Malformed or unreadable table input.
class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<double> x;
  std::vector<double> y;
};

// Two-column whitespace-separated text, ascending x, '#' comment lines.
Table read_table(const std::string& path);
Table parse_table(const std::string& text);
// Samples a table on the grid: exact node match when possible, otherwise linear
// interpolation. A table given on x >= 0 only is mirrored.
GridFunction table_to_grid(const Table& t, const GridSpec& g);
void write_table(const std::string& path, const GridFunction& f,
                 const std::vector<std::string>& header);
std::string format_table(const GridFunction& f, const std::vector<std::string>& header);

std::string sha256_hex(const std::string& data);

}  // namespace henderson
