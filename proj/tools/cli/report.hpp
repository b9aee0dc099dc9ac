#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scenario.hpp"

namespace ceslab::cli {

/// A report cell. NaN doubles render as empty CSV fields and JSON null.
using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Report {
  std::vector<Section> sections;
  /// Trailing key/value records: '#' lines in CSV, "footer" in JSON.
  std::vector<std::pair<std::string, Cell>> footer;
};

/// 17 significant digits, general notation, independent of the C locale.
std::string format_double(double x);

std::string render(const Report& r, Format f);

}  // namespace ceslab::cli
