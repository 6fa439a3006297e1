#pragma once

#include <span>
#include <vector>

namespace behavigram {

// Natural cubic spline (zero second derivative at the end knots) through
// strictly increasing knots. Two knots degenerate to a line.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::span<const double> x, std::span<const double> y);

  double operator()(double t) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> second_derivative_;
};

}  // namespace behavigram
