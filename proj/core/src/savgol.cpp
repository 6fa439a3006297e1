#include "behavigram/savgol.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "behavigram/errors.hpp"

namespace behavigram {

namespace {

// Solve the symmetric (p+1)x(p+1) system M g = e0 by Gauss elimination with
// partial pivoting. Long double keeps the moment matrix well-behaved for the
// window sizes used here.
std::vector<long double> solve_normal_equations(const std::vector<long double>& moments, int p) {
  const int n = p + 1;
  std::vector<long double> m(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m[static_cast<std::size_t>(r) * n + c] = moments[r + c];
  }
  std::vector<long double> rhs(n, 0.0L);
  rhs[0] = 1.0L;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[static_cast<std::size_t>(r) * n + col]) >
          std::abs(m[static_cast<std::size_t>(pivot) * n + col])) {
        pivot = r;
      }
    }
    if (m[static_cast<std::size_t>(pivot) * n + col] == 0.0L) {
      fail(Errc::InvalidSpec, "singular normal equations in savgol_coefficients");
    }
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(m[static_cast<std::size_t>(pivot) * n + c],
                  m[static_cast<std::size_t>(col) * n + c]);
      }
      std::swap(rhs[pivot], rhs[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      const long double f =
          m[static_cast<std::size_t>(r) * n + col] / m[static_cast<std::size_t>(col) * n + col];
      for (int c = col; c < n; ++c) {
        m[static_cast<std::size_t>(r) * n + c] -= f * m[static_cast<std::size_t>(col) * n + c];
      }
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<long double> g(n, 0.0L);
  for (int r = n - 1; r >= 0; --r) {
    long double acc = rhs[r];
    for (int c = r + 1; c < n; ++c) acc -= m[static_cast<std::size_t>(r) * n + c] * g[c];
    g[r] = acc / m[static_cast<std::size_t>(r) * n + r];
  }
  return g;
}

}  // namespace

void SavGolSpec::validate() const {
  if (window_len < 3 || window_len % 2 == 0) {
    fail(Errc::InvalidSpec, "savgol window_len must be odd and >= 3, got " +
                                std::to_string(window_len));
  }
  if (poly_order < 0 || poly_order >= window_len) {
    fail(Errc::InvalidSpec, "savgol poly_order must be in [0, window_len), got " +
                                std::to_string(poly_order));
  }
}

std::vector<double> savgol_coefficients(const SavGolSpec& spec) {
  spec.validate();
  const int w = spec.window_len;
  const int p = spec.poly_order;
  const int h = (w - 1) / 2;

  // Moments S_m = sum_i x_i^m over window positions x_i = -h..h.
  std::vector<long double> moments(static_cast<std::size_t>(2 * p + 1), 0.0L);
  for (int i = -h; i <= h; ++i) {
    long double xp = 1.0L;
    for (int m = 0; m <= 2 * p; ++m) {
      moments[static_cast<std::size_t>(m)] += xp;
      xp *= static_cast<long double>(i);
    }
  }
  const auto g = solve_normal_equations(moments, p);

  std::vector<double> kernel(static_cast<std::size_t>(w));
  for (int i = -h; i <= h; ++i) {
    long double acc = 0.0L;
    long double xp = 1.0L;
    for (int j = 0; j <= p; ++j) {
      acc += g[static_cast<std::size_t>(j)] * xp;
      xp *= static_cast<long double>(i);
    }
    kernel[static_cast<std::size_t>(i + h)] = static_cast<double>(acc);
  }
  return kernel;
}

TimeSeries savgol_filter(const TimeSeries& series, const SavGolSpec& spec) {
  const auto kernel = savgol_coefficients(spec);
  series.uniform_dt();  // throws NonUniformSeries

  const int w = spec.window_len;
  const int h = (w - 1) / 2;
  const long n = static_cast<long>(series.sample_count());
  if (n < w) {
    fail(Errc::InvalidSpec, "series '" + series.stream_id + "' shorter than savgol window");
  }

  TimeSeries out = series;
  for (std::size_t c = 0; c < series.channel_count(); ++c) {
    for (long i = 0; i < n; ++i) {
      double acc = 0.0;
      bool missing = false;
      for (int k = -h; k <= h; ++k) {
        long idx = i + k;
        if (idx < 0) idx = -idx;              // mirror, edge sample not repeated
        if (idx >= n) idx = 2 * (n - 1) - idx;
        const double v = series.at(static_cast<std::size_t>(idx), c);
        if (is_missing(v)) {
          missing = true;
          break;
        }
        acc += kernel[static_cast<std::size_t>(k + h)] * v;
      }
      out.at(static_cast<std::size_t>(i), c) = missing ? kMissing : acc;
    }
  }
  out.annotations["edge_affected_samples"] = std::to_string(h);
  return out;
}

}  // namespace behavigram
