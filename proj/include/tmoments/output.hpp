#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tmoments/verify.hpp"

namespace tmoments::output {

// Raised before any NaN or infinity would be serialized.
class NonFiniteOutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, std::string>> metadata;
};

// Shortest exact decimal form of v (std::to_chars), locale-independent.
std::string format_real(double v);

// JSON object with sorted keys and two-space indentation; parsing and
// re-dumping the result is byte-identical. Throws NonFiniteOutputError when
// any value is NaN or infinite.
std::string to_json(const OutputRecord& record);

// One CSV row per value: label,value with a header row, 17 significant
// digits, '.' decimal separator, '\n' line ends.
std::string to_csv(const OutputRecord& record);

struct CurveTable {
  std::string x_label;
  std::vector<std::string> column_labels;
  std::vector<double> x;                       // grid values
  std::vector<std::vector<double>> columns;    // one vector per label
};

std::string curve_to_csv(const CurveTable& table);
std::string curve_to_json(const std::string& command, const CurveTable& table);

std::string reports_to_json(const std::vector<verify::VerificationReport>& reports);
std::string reports_to_csv(const std::vector<verify::VerificationReport>& reports);

// Writes to stdout when path is "-", else to the file; throws IoError when
// the file cannot be opened.
void write_text(const std::string& path, const std::string& text);

}  // namespace tmoments::output
