#include "behavigram/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"

namespace behavigram {

TimeSeries remove_gravity(const TimeSeries& accel_g, const GravityRemovalOptions& options) {
  const double dt = accel_g.uniform_dt();
  if (!(options.baseline_window_s > 0.0)) {
    fail(Errc::InvalidSpec, "baseline window must be positive");
  }
  long w = static_cast<long>(std::llround(options.baseline_window_s / dt));
  w = std::max(1L, w);
  if (w % 2 == 0) ++w;  // symmetric window
  const long half = w / 2;
  const long n = static_cast<long>(accel_g.sample_count());

  TimeSeries out = accel_g;
  out.annotations["units"] = "m/s^2";
  out.annotations["baseline_window_s"] = csv::format_number(options.baseline_window_s);

  std::vector<double> prefix_sum(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<long> prefix_cnt(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t c = 0; c < accel_g.channel_count(); ++c) {
    for (long i = 0; i < n; ++i) {
      const double v = accel_g.at(static_cast<std::size_t>(i), c);
      prefix_sum[static_cast<std::size_t>(i) + 1] =
          prefix_sum[static_cast<std::size_t>(i)] + (is_missing(v) ? 0.0 : v);
      prefix_cnt[static_cast<std::size_t>(i) + 1] =
          prefix_cnt[static_cast<std::size_t>(i)] + (is_missing(v) ? 0 : 1);
    }
    for (long i = 0; i < n; ++i) {
      const double v = accel_g.at(static_cast<std::size_t>(i), c);
      if (is_missing(v)) {
        out.at(static_cast<std::size_t>(i), c) = kMissing;
        continue;
      }
      const long lo = std::max(0L, i - half);
      const long hi = std::min(n - 1, i + half);
      const double sum = prefix_sum[static_cast<std::size_t>(hi) + 1] -
                         prefix_sum[static_cast<std::size_t>(lo)];
      const long cnt = prefix_cnt[static_cast<std::size_t>(hi) + 1] -
                       prefix_cnt[static_cast<std::size_t>(lo)];
      const double baseline = sum / static_cast<double>(cnt);  // cnt >= 1: v itself is present
      out.at(static_cast<std::size_t>(i), c) = (v - baseline) * kGravityMps2;
    }
  }
  return out;
}

double leak_for_half_life(double half_life_s, double rate_hz) {
  if (!(half_life_s > 0.0) || !(rate_hz > 0.0)) {
    fail(Errc::InvalidSpec, "half-life and rate must be positive");
  }
  return std::pow(0.5, 1.0 / (half_life_s * rate_hz));
}

TimeSeries velocity_magnitude(const TimeSeries& linear_accel_mps2, double leak) {
  if (linear_accel_mps2.channel_count() != 3) {
    fail(Errc::InvalidSpec, "velocity_magnitude expects a 3-channel acceleration series");
  }
  if (!(leak > 0.0) || leak > 1.0) {
    fail(Errc::InvalidSpec, "leak must be in (0,1], got " + csv::format_number(leak));
  }
  const double dt = linear_accel_mps2.uniform_dt();
  const std::size_t n = linear_accel_mps2.sample_count();

  TimeSeries out;
  out.stream_id = linear_accel_mps2.stream_id;
  out.channels = {"speed"};
  out.timestamps = linear_accel_mps2.timestamps;
  out.nominal_rate_hz = linear_accel_mps2.nominal_rate_hz;
  out.annotations = linear_accel_mps2.annotations;
  out.annotations["units"] = "m/s";
  out.annotations["leak_per_sample"] = csv::format_number(leak);
  out.annotations["norm"] = "euclidean over axis velocities";
  out.values.assign(n, kMissing);

  double v[3] = {0.0, 0.0, 0.0};
  bool prev_present = false;  // previous row fully present, v holds its velocity
  for (std::size_t k = 0; k < n; ++k) {
    const double ax = linear_accel_mps2.at(k, 0);
    const double ay = linear_accel_mps2.at(k, 1);
    const double az = linear_accel_mps2.at(k, 2);
    if (is_missing(ax) || is_missing(ay) || is_missing(az)) {
      prev_present = false;  // speed stays missing, integration restarts after the gap
      continue;
    }
    if (prev_present) {
      v[0] = leak * v[0] + dt * (ax + linear_accel_mps2.at(k - 1, 0)) / 2.0;
      v[1] = leak * v[1] + dt * (ay + linear_accel_mps2.at(k - 1, 1)) / 2.0;
      v[2] = leak * v[2] + dt * (az + linear_accel_mps2.at(k - 1, 2)) / 2.0;
    } else {
      v[0] = v[1] = v[2] = 0.0;  // v starts at rest on the first sample of a run
    }
    prev_present = true;
    out.values[k] = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  }
  return out;
}

}  // namespace behavigram
