#pragma once

#include <string>

namespace behavigram {

// Minimal deterministic SVG writer: fixed 3-decimal coordinates, '.'
// separator, no generated ids or timestamps, so identical scene input
// produces identical bytes.
class SvgDocument {
 public:
  SvgDocument(double width, double height);

  void desc(const std::string& text);
  void raw(const std::string& fragment);
  void open_group(const std::string& attrs);
  void close_group();
  void rect(double x, double y, double w, double h, const std::string& attrs);
  void line(double x1, double y1, double x2, double y2, const std::string& attrs);
  void text(double x, double y, const std::string& attrs, const std::string& content);

  std::string finish();

  static std::string fmt(double v);  // fixed 3 decimals
  static std::string escape(const std::string& text);

 private:
  std::string body_;
  bool finished_{false};
};

// Single-hue dark-to-bright ramp; brightness is monotone in the input.
struct ColorRamp {
  unsigned char lo[3];
  unsigned char hi[3];

  // Named ramps: "gray", "amber", "teal". Throws InvalidSpec.
  static ColorRamp named(const std::string& name);

  // u clamped to [0,1]; "#rrggbb".
  std::string color(double u) const;
};

}  // namespace behavigram
