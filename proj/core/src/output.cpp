#include "gelsolve/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gelsolve {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void CsvWriter::header(const std::vector<std::string>& names) { row(names); }

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_number(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_escape(fields[i]);
  }
  out_ << '\n';
}

namespace {

std::string json_string(const std::string& s) {
  std::ostringstream out;
  out << '"';
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out << buf;
        } else {
          out << ch;
        }
    }
  }
  out << '"';
  return out.str();
}

}  // namespace

JsonSummary& JsonSummary::add(const std::string& key, double value) {
  entries_.emplace_back(key, std::isfinite(value) ? format_number(value) : json_string(format_number(value)));
  return *this;
}

JsonSummary& JsonSummary::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, json_string(value));
  return *this;
}

JsonSummary& JsonSummary::add(const std::string& key, bool value) {
  entries_.emplace_back(key, value ? "true" : "false");
  return *this;
}

std::string JsonSummary::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out += i ? ",\n  " : "\n  ";
    out += json_string(entries_[i].first);
    out += ": ";
    out += entries_[i].second;
  }
  out += entries_.empty() ? "}" : "\n}";
  return out;
}

}  // namespace gelsolve
