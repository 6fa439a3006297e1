#include "behavigram/svg.hpp"

#include <algorithm>
#include <cmath>

#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"

namespace behavigram {

SvgDocument::SvgDocument(double width, double height) {
  body_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
          fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
}

void SvgDocument::desc(const std::string& text) {
  body_ += "<desc>" + escape(text) + "</desc>\n";
}

void SvgDocument::raw(const std::string& fragment) { body_ += fragment; }

void SvgDocument::open_group(const std::string& attrs) {
  body_ += "<g " + attrs + ">\n";
}

void SvgDocument::close_group() { body_ += "</g>\n"; }

void SvgDocument::rect(double x, double y, double w, double h, const std::string& attrs) {
  body_ += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) + "\" height=\"" +
           fmt(h) + "\" " + attrs + "/>\n";
}

void SvgDocument::line(double x1, double y1, double x2, double y2, const std::string& attrs) {
  body_ += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" +
           fmt(y2) + "\" " + attrs + "/>\n";
}

void SvgDocument::text(double x, double y, const std::string& attrs, const std::string& content) {
  body_ += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" " + attrs + ">" + escape(content) +
           "</text>\n";
}

std::string SvgDocument::finish() {
  if (!finished_) {
    body_ += "</svg>\n";
    finished_ = true;
  }
  return body_;
}

std::string SvgDocument::fmt(double v) { return csv::format_fixed(v, 3); }

std::string SvgDocument::escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

ColorRamp ColorRamp::named(const std::string& name) {
  if (name == "gray") return {{0x28, 0x28, 0x28}, {0xf2, 0xf2, 0xf2}};
  if (name == "amber") return {{0x33, 0x1a, 0x00}, {0xff, 0xc2, 0x4d}};
  if (name == "teal") return {{0x00, 0x26, 0x26}, {0x66, 0xe6, 0xe6}};
  fail(Errc::InvalidSpec, "unknown color map '" + name + "'");
}

std::string ColorRamp::color(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  char buf[8];
  buf[0] = '#';
  static const char* hex = "0123456789abcdef";
  for (int c = 0; c < 3; ++c) {
    const double v = static_cast<double>(lo[c]) + (static_cast<double>(hi[c]) - lo[c]) * u;
    const int byte = static_cast<int>(std::lround(v));
    buf[1 + 2 * c] = hex[(byte >> 4) & 0xf];
    buf[2 + 2 * c] = hex[byte & 0xf];
  }
  return std::string(buf, 7);
}

}  // namespace behavigram
