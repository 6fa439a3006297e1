#include "behavigram/spline.hpp"

#include <algorithm>
#include <cstddef>

#include "behavigram/errors.hpp"

namespace behavigram {

NaturalCubicSpline::NaturalCubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) fail(Errc::InvalidSpec, "spline needs >= 2 matching knots");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) fail(Errc::InvalidSpec, "spline knots must strictly increase");
  }

  // Tridiagonal system for the interior second derivatives (Thomas algorithm);
  // natural conditions pin the end values to zero.
  second_derivative_.assign(n, 0.0);
  if (n == 2) return;

  std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    sub[i] = h0;
    diag[i] = 2.0 * (h0 + h1);
    sup[i] = h1;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double f = sub[i] / diag[i - 1];
    diag[i] -= f * sup[i - 1];
    rhs[i] -= f * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    second_derivative_[i] = (rhs[i] - sup[i] * second_derivative_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

double NaturalCubicSpline::operator()(double t) const {
  const std::size_t n = x_.size();
  // Clamp to the end intervals; evaluation outside the knot range continues
  // the boundary cubic.
  std::size_t hi = static_cast<std::size_t>(
      std::upper_bound(x_.begin(), x_.end(), t) - x_.begin());
  hi = std::min(std::max<std::size_t>(hi, 1), n - 1);
  const std::size_t lo = hi - 1;

  const double h = x_[hi] - x_[lo];
  const double a = (x_[hi] - t) / h;
  const double b = (t - x_[lo]) / h;
  return a * y_[lo] + b * y_[hi] +
         ((a * a * a - a) * second_derivative_[lo] + (b * b * b - b) * second_derivative_[hi]) *
             (h * h) / 6.0;
}

}  // namespace behavigram
