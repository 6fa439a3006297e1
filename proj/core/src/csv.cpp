#include "behavigram/csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "behavigram/errors.hpp"
#include "behavigram/time_series.hpp"

namespace behavigram::csv {

std::string format_number(double v) {
  if (is_missing(v)) return "";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
  if (v == 0.0) v = 0.0;  // fold -0 into 0 so output bytes are stable
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view field, const std::string& file, std::size_t line_no) {
  // Trim surrounding spaces; an empty field is the missing-value token.
  std::size_t b = 0, e = field.size();
  while (b < e && (field[b] == ' ' || field[b] == '\t')) ++b;
  while (e > b && (field[e - 1] == ' ' || field[e - 1] == '\t')) --e;
  if (b == e) return kMissing;

  double v = 0.0;
  auto res = std::from_chars(field.data() + b, field.data() + e, v);
  if (res.ec != std::errc() || res.ptr != field.data() + e) {
    fail(Errc::MalformedFile, file + ":" + std::to_string(line_no) + ": cannot parse number '" +
                                  std::string(field.substr(b, e - b)) + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char delim, std::size_t max_fields) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    if (max_fields > 0 && out.size() + 1 == max_fields) {
      out.push_back(line.substr(start));
      return out;
    }
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace behavigram::csv
