#pragma once

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maxstream::detail {

// Shortest representation that parses back to the same double.
inline void append_double(std::string& out, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  out.append(buf, end);
}

inline std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline void append_row(std::string& out, double a, double b) {
  append_double(out, a);
  out.push_back(',');
  append_double(out, b);
  out.push_back('\n');
}

inline double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

// Numeric CSV rows; blank lines and lines starting with '#' or a letter (header) are skipped.
inline std::vector<std::vector<double>> parse_csv_rows(std::string_view text) {
  std::vector<std::vector<double>> rows;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty() || line.front() == '#' ||
        (line.front() >= 'a' && line.front() <= 'z') || (line.front() >= 'A' && line.front() <= 'Z')) {
      continue;
    }
    std::vector<double> fields;
    while (true) {
      const auto comma = line.find(',');
      fields.push_back(parse_double(line.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace maxstream::detail
