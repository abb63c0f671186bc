#include "tmoments/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace tmoments::output {

namespace {

using nlohmann::json;

void require_finite(double v, const std::string& label) {
  if (!std::isfinite(v)) {
    throw NonFiniteOutputError("refusing to emit non-finite value for '" +
                               label + "'");
  }
}

// 17 significant digits: enough to round-trip any double exactly.
std::string format_real_17(double v) {
  char buf[40];
  const auto [end, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, end);
}

json record_to_json_value(const OutputRecord& record) {
  json inputs = json::object();
  for (const auto& [key, value] : record.inputs) inputs[key] = value;
  json values = json::array();
  for (const auto& [label, value] : record.values) {
    require_finite(value, label);
    values.push_back(json{{"label", label}, {"value", value}});
  }
  json metadata = json::object();
  for (const auto& [key, value] : record.metadata) metadata[key] = value;
  return json{{"command", record.command},
              {"inputs", inputs},
              {"values", values},
              {"metadata", metadata}};
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

std::string to_json(const OutputRecord& record) {
  return record_to_json_value(record).dump(2) + "\n";
}

std::string to_csv(const OutputRecord& record) {
  std::string out = "label,value\n";
  for (const auto& [label, value] : record.values) {
    require_finite(value, label);
    out += label;
    out += ',';
    out += format_real_17(value);
    out += '\n';
  }
  return out;
}

std::string curve_to_csv(const CurveTable& table) {
  std::string out = table.x_label;
  for (const auto& label : table.column_labels) {
    out += ',';
    out += label;
  }
  out += '\n';
  for (std::size_t row = 0; row < table.x.size(); ++row) {
    require_finite(table.x[row], table.x_label);
    out += format_real_17(table.x[row]);
    for (std::size_t col = 0; col < table.columns.size(); ++col) {
      require_finite(table.columns[col][row], table.column_labels[col]);
      out += ',';
      out += format_real_17(table.columns[col][row]);
    }
    out += '\n';
  }
  return out;
}

std::string curve_to_json(const std::string& command, const CurveTable& table) {
  json columns = json::array();
  columns.push_back(table.x_label);
  for (const auto& label : table.column_labels) columns.push_back(label);
  json rows = json::array();
  for (std::size_t row = 0; row < table.x.size(); ++row) {
    require_finite(table.x[row], table.x_label);
    json line = json::array();
    line.push_back(table.x[row]);
    for (std::size_t col = 0; col < table.columns.size(); ++col) {
      require_finite(table.columns[col][row], table.column_labels[col]);
      line.push_back(table.columns[col][row]);
    }
    rows.push_back(line);
  }
  return json{{"command", command}, {"columns", columns}, {"rows", rows}}
             .dump(2) +
         "\n";
}

std::string reports_to_json(const std::vector<verify::VerificationReport>& reports) {
  json out = json::array();
  for (const auto& report : reports) {
    require_finite(report.max_rel_error, report.identity + " max_rel_error");
    out.push_back(json{{"identity", report.identity},
                       {"grid", report.grid},
                       {"max_rel_error", report.max_rel_error},
                       {"tolerance", report.tolerance},
                       {"passed", report.passed}});
  }
  return out.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<verify::VerificationReport>& reports) {
  std::string out = "identity,grid,max_rel_error,tolerance,passed\n";
  for (const auto& report : reports) {
    require_finite(report.max_rel_error, report.identity + " max_rel_error");
    out += report.identity;
    out += ",\"" + report.grid + "\",";
    out += format_real_17(report.max_rel_error);
    out += ',';
    out += format_real_17(report.tolerance);
    out += ',';
    out += report.passed ? "true" : "false";
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output file: " + path);
  file << text;
  if (!file) throw IoError("failed while writing output file: " + path);
}

}  // namespace tmoments::output
