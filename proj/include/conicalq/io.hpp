#pragma once

// Fixture CSV reading and the record layout shared by the CLI and the tests.
//
// Fixture files: '#' comment lines, a header naming at least m, tau, x and a
// value column (qtilde_ref for oracle files, qtilde for table output), then
// one data row per point.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "conicalq/errors.hpp"
#include "conicalq/evaluation.hpp"
#include "conicalq/scaled_value.hpp"

namespace conicalq {

class FormatError : public Error {
 public:
  using Error::Error;
  const char* tag() const noexcept override { return "format"; }
};

struct FixtureRow {
  int m = 0;
  double tau = 0.0;
  double x = 0.0;
  ScaledValue reference;
  std::string text;  // reference as written in the file
  int line = 0;
};

struct FixtureSet {
  std::vector<FixtureRow> rows;
  std::vector<std::string> comments;
  std::string value_column;  // "qtilde_ref" or "qtilde"
  // Rows of table output whose value column holds "error" are skipped.
  int skipped_error_rows = 0;
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline int column_index(const std::vector<std::string>& header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

inline double parse_double_field(const std::string& text, int line, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0') {
    throw FormatError("line " + std::to_string(line) + ": bad " + what + " '" + text + "'");
  }
  return v;
}

}  // namespace detail

inline FixtureSet read_fixtures(std::istream& in) {
  FixtureSet set;
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  int im = -1, itau = -1, ix = -1, ivalue = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      set.comments.push_back(line);
      continue;
    }
    const auto fields = detail::split_csv(line);
    if (header.empty()) {
      header = fields;
      im = detail::column_index(header, "m");
      itau = detail::column_index(header, "tau");
      ix = detail::column_index(header, "x");
      ivalue = detail::column_index(header, "qtilde_ref");
      set.value_column = "qtilde_ref";
      if (ivalue < 0) {
        ivalue = detail::column_index(header, "qtilde");
        set.value_column = "qtilde";
      }
      if (im < 0 || itau < 0 || ix < 0 || ivalue < 0) {
        throw FormatError("header must name m, tau, x and qtilde_ref (or qtilde)");
      }
      continue;
    }
    if (fields.size() != header.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " fields, found " +
                        std::to_string(fields.size()));
    }
    FixtureRow row;
    row.line = line_no;
    const double m = detail::parse_double_field(fields[im], line_no, "m");
    if (m != static_cast<int>(m) || m < 0) {
      throw FormatError("line " + std::to_string(line_no) + ": m must be a non-negative integer");
    }
    row.m = static_cast<int>(m);
    row.tau = detail::parse_double_field(fields[itau], line_no, "tau");
    row.x = detail::parse_double_field(fields[ix], line_no, "x");
    row.text = fields[ivalue];
    if (row.text == "error") {
      ++set.skipped_error_rows;
      continue;
    }
    const auto ref = ScaledValue::parse(row.text);
    if (!ref) throw FormatError("line " + std::to_string(line_no) + ": bad value '" + row.text + "'");
    row.reference = *ref;
    set.rows.push_back(row);
  }
  if (header.empty()) throw FormatError("no header row");
  return set;
}

inline FixtureSet read_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_fixtures(in);
}

/// One output row: either a value or the error tag of the failed evaluation.
struct OutputRecord {
  int m = 0;
  double tau = 0.0;
  double x = 0.0;
  ScaledValue qtilde;
  std::string method;  // Method tag, or the error tag on failure
  int terms = 0;
  double err_est = 0.0;
  bool failed = false;
  std::string message;  // error text when failed
};

inline constexpr std::string_view kCsvHeader = "m,tau,x,qtilde,method,terms,err_est";

/// Shortest decimal that reads back to the same double.
inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Values always carry 17 significant digits.
inline std::string format_value(const ScaledValue& v) { return v.to_string(17); }

inline std::string to_csv(const OutputRecord& r) {
  std::string out = std::to_string(r.m) + "," + format_real(r.tau) + "," + format_real(r.x) + ",";
  if (r.failed) return out + "error," + r.method + ",0,";
  return out + format_value(r.qtilde) + "," + r.method + "," + std::to_string(r.terms) + "," +
         format_real(r.err_est);
}

inline std::string to_plain(const OutputRecord& r) {
  std::string out = "m=" + std::to_string(r.m) + " tau=" + format_real(r.tau) + " x=" + format_real(r.x);
  if (r.failed) return out + " error=" + r.method + ": " + r.message;
  return out + " qtilde=" + format_value(r.qtilde) + " method=" + r.method +
         " terms=" + std::to_string(r.terms) + " err_est=" + format_real(r.err_est);
}

}  // namespace conicalq
