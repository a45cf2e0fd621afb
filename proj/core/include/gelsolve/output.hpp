#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace gelsolve {

/// Fixed 17-significant-digit rendering (printf %.17g style); non-finite
/// values become "inf", "-inf" or "nan".
std::string format_number(double value);

/// RFC-4180-style CSV: header row, comma separators, fields quoted when needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

std::string csv_escape(const std::string& field);

/// Flat JSON object of named numbers (17 significant digits) and strings;
/// non-finite numbers are written as the strings "inf", "-inf", "nan".
class JsonSummary {
 public:
  JsonSummary& add(const std::string& key, double value);
  JsonSummary& add(const std::string& key, const std::string& value);
  JsonSummary& add(const std::string& key, bool value);
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;  // key, encoded value
};

}  // namespace gelsolve
