#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace behavigram::csv {

// Shortest round-trip decimal representation ('.' separator, locale-free).
// Missing values serialize as the empty field.
std::string format_number(double v);

// Fixed-decimal formatting used where byte determinism matters (SVG output).
std::string format_fixed(double v, int decimals);

// Empty field -> missing (NaN). Anything unparseable raises MalformedFile
// naming `file` and the 1-based `line_no`.
double parse_number(std::string_view field, const std::string& file, std::size_t line_no);

// Split on `delim`. When max_fields > 0, at most that many fields are
// produced and the last one keeps any remaining delimiters (marker labels
// may contain commas).
std::vector<std::string> split(const std::string& line, char delim = ',',
                               std::size_t max_fields = 0);

std::string strip_cr(std::string line);

}  // namespace behavigram::csv
