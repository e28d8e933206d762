#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace mobius {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// Rectangular table with a fixed column order.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// Shortest decimal text with 17 significant digits ("%.17g"); NaN and
/// infinities print as nan / inf / -inf.
std::string format_double(double x);

/// CSV: header line, ',' separators, '.' decimals, '\n' endings, strings
/// quoted only when they contain a separator, quote or newline.
std::string to_csv(const Table& t);

/// JSON array of objects keyed by the header names; non-finite doubles become null.
std::string to_json(const Table& t);

/// Writes via a temporary sibling file and rename, so readers never observe a
/// partial file. Throws std::runtime_error naming the path on failure.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace mobius
