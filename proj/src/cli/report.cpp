#include "pecwe/cli/report.hpp"

#include <sstream>

#include "pecwe/errors.hpp"
#include "pecwe/util/numfmt.hpp"

namespace pecwe {
namespace {

constexpr int kReportFormatVersion = 1;
constexpr const char* kToolVersion = "0.1.0";

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return float_repr(v); }
    std::string operator()(const Fixed& f) const {
      return fixed_decimals(f.value, f.decimals);
    }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(long long v) const { return v; }
    nlohmann::json operator()(double v) const { return v; }
    nlohmann::json operator()(const Fixed& f) const { return f.value; }
    nlohmann::json operator()(bool b) const { return b; }
  };
  return std::visit(Visitor{}, cell);
}

void render_table_csv(const Table& table, std::ostringstream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      fail(ErrorKind::Io, "report row width does not match its header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(cell_text(row[i]));
    }
    out << '\n';
  }
}

nlohmann::json table_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[table.columns[i]] = cell_json(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

}  // namespace

std::string render_csv(const Report& report) {
  std::ostringstream out;
  render_table_csv(report.table, out);
  if (report.footer) {
    out << '\n';
    render_table_csv(*report.footer, out);
  }
  return out.str();
}

std::string render_json(const Report& report) {
  nlohmann::json doc;
  doc["meta"] = {
      {"command", report.command},
      {"format_version", kReportFormatVersion},
      {"tool", {{"name", "pecwe"}, {"version", kToolVersion}}},
      {"config", report.config_echo},
      {"columns", report.table.columns},
  };
  doc["rows"] = table_json(report.table);
  if (report.footer) {
    doc["footer"] = {
        {"columns", report.footer->columns},
        {"rows", table_json(*report.footer)},
    };
  } else {
    doc["footer"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

}  // namespace pecwe
