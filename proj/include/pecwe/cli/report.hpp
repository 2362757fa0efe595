#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pecwe {

/// One output cell. `Fixed` renders at a fixed decimal count in CSV while
/// the JSON writer keeps the full double, so text reports match the
/// rounding policy without losing precision in machine output.
struct Fixed {
  double value;
  int decimals;
};

using Cell = std::variant<std::monostate, std::string, long long, double, Fixed, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// A command's renderable result: one main table, an optional footer table
/// (histograms, statistics), and meta describing how it was produced.
struct Report {
  std::string command;
  Table table;
  std::optional<Table> footer;
  nlohmann::json config_echo;
};

/// RFC 4180 shaped: comma separated, LF line ends, fields quoted only when
/// they contain a comma, quote, or newline. The footer table follows the
/// main one after a single blank line.
std::string render_csv(const Report& report);

/// {"meta": ..., "rows": [...], "footer": ...} with two-space indentation.
/// Deterministic: keys are ordered and no timestamps are embedded.
std::string render_json(const Report& report);

}  // namespace pecwe
