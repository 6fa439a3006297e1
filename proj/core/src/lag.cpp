#include "behavigram/lag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"

namespace behavigram {

namespace {

// Normalized cross-correlation of mean-removed overlapping pairs at one
// integer lag. b_offset maps a-index i to b-index i + b_offset.
double ncc_at(const std::vector<double>& a, const std::vector<double>& b, long b_offset) {
  const long na = static_cast<long>(a.size());
  const long nb = static_cast<long>(b.size());
  const long i_lo = std::max(0L, -b_offset);
  const long i_hi = std::min(na, nb - b_offset);
  if (i_hi - i_lo < 8) return -std::numeric_limits<double>::infinity();

  double sa = 0.0, sb = 0.0;
  long n = 0;
  for (long i = i_lo; i < i_hi; ++i) {
    const double x = a[static_cast<std::size_t>(i)];
    const double y = b[static_cast<std::size_t>(i + b_offset)];
    if (is_missing(x) || is_missing(y)) continue;
    sa += x;
    sb += y;
    ++n;
  }
  if (n < 8) return -std::numeric_limits<double>::infinity();
  const double ma = sa / static_cast<double>(n);
  const double mb = sb / static_cast<double>(n);

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (long i = i_lo; i < i_hi; ++i) {
    const double x = a[static_cast<std::size_t>(i)];
    const double y = b[static_cast<std::size_t>(i + b_offset)];
    if (is_missing(x) || is_missing(y)) continue;
    const double dx = x - ma;
    const double dy = y - mb;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return -std::numeric_limits<double>::infinity();
  return sxy / std::sqrt(sxx * syy);
}

double present_variance(const TimeSeries& s) {
  double sum = 0.0;
  long n = 0;
  for (double v : s.values) {
    if (is_missing(v)) continue;
    sum += v;
    ++n;
  }
  if (n < 2) return 0.0;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : s.values) {
    if (is_missing(v)) continue;
    ss += (v - mean) * (v - mean);
  }
  return ss / static_cast<double>(n);
}

}  // namespace

double estimate_lag(const TimeSeries& a, const TimeSeries& b, double max_lag_s) {
  if (a.channel_count() != 1 || b.channel_count() != 1) {
    fail(Errc::InvalidSpec, "estimate_lag expects single-channel series");
  }
  if (!(max_lag_s > 0.0)) fail(Errc::InvalidSpec, "max_lag must be positive");

  const double dt_a = a.uniform_dt();
  const double dt_b = b.uniform_dt();
  if (std::abs(dt_a - dt_b) > 1e-9) {
    fail(Errc::GridMismatch, "series rates differ: " + csv::format_number(1.0 / dt_a) + " vs " +
                                 csv::format_number(1.0 / dt_b) + " Hz");
  }
  const double dt = dt_a;

  // The grids must be commensurate: an integer sample count apart.
  const double offset_samples = (b.start_time() - a.start_time()) / dt;
  const long base = static_cast<long>(std::llround(offset_samples));
  if (std::abs(offset_samples - static_cast<double>(base)) > 1e-6) {
    fail(Errc::GridMismatch, "series grids are offset by a non-integer sample count");
  }

  const double overlap =
      std::min(a.end_time(), b.end_time()) - std::max(a.start_time(), b.start_time());
  if (overlap < 4.0 * max_lag_s) {
    fail(Errc::InsufficientOverlap, "overlap " + csv::format_number(overlap) +
                                        " s is below 4*max_lag = " +
                                        csv::format_number(4.0 * max_lag_s) + " s");
  }
  if (present_variance(a) <= 0.0) fail(Errc::ZeroVariance, "series '" + a.stream_id + "' is constant");
  if (present_variance(b) <= 0.0) fail(Errc::ZeroVariance, "series '" + b.stream_id + "' is constant");

  const long max_lag_samples = static_cast<long>(std::llround(max_lag_s / dt));

  // Lag k means b trails a by k*dt: compare a(t) against b(t + k*dt), i.e.
  // b-index i - base + k. Visit lags in order 0, +1, -1, +2, -2, ... and keep
  // the first strict maximum, which breaks ties toward the smaller |lag|.
  double best_r = -std::numeric_limits<double>::infinity();
  long best_k = 0;
  for (long mag = 0; mag <= max_lag_samples; ++mag) {
    for (const long k : {mag, -mag}) {
      if (mag == 0 && k < 0) continue;
      const double r = ncc_at(a.values, b.values, k - base);
      if (r > best_r + 1e-15) {
        best_r = r;
        best_k = k;
      }
    }
  }
  if (!std::isfinite(best_r)) {
    fail(Errc::InsufficientOverlap, "no lag with enough overlapping present samples");
  }
  return static_cast<double>(best_k) * dt;
}

Recording align(Recording recording, const StreamLags& lags) {
  for (double lag : {lags.accel_rh, lags.accel_lh, lags.rssi_rh, lags.rssi_lh, lags.gaze,
                     lags.markers}) {
    if (!std::isfinite(lag)) fail(Errc::InvalidSpec, "stream lag must be finite");
  }

  const auto shift = [](TimeSeries& s, double lag) {
    for (double& t : s.timestamps) t -= lag;
  };
  shift(recording.accel_rh, lags.accel_rh);
  shift(recording.accel_lh, lags.accel_lh);
  shift(recording.rssi_rh, lags.rssi_rh);
  shift(recording.rssi_lh, lags.rssi_lh);
  shift(recording.gaze, lags.gaze);
  for (auto& e : recording.markers.events) e.t -= lags.markers;

  double origin = std::numeric_limits<double>::infinity();
  for (const TimeSeries* s : recording.stream_list()) {
    if (!s->empty()) origin = std::min(origin, s->start_time());
  }
  for (const auto& e : recording.markers.events) origin = std::min(origin, e.t);
  if (!std::isfinite(origin)) origin = 0.0;

  for (TimeSeries* s : recording.stream_list()) {
    for (double& t : s->timestamps) t -= origin;
  }
  for (auto& e : recording.markers.events) e.t -= origin;

  recording.meta["align.lag_accel_rh_s"] = csv::format_number(lags.accel_rh);
  recording.meta["align.lag_accel_lh_s"] = csv::format_number(lags.accel_lh);
  recording.meta["align.lag_rssi_rh_s"] = csv::format_number(lags.rssi_rh);
  recording.meta["align.lag_rssi_lh_s"] = csv::format_number(lags.rssi_lh);
  recording.meta["align.lag_gaze_s"] = csv::format_number(lags.gaze);
  recording.meta["align.lag_markers_s"] = csv::format_number(lags.markers);
  recording.meta["align.origin_shift_s"] = csv::format_number(origin);
  return recording;
}

}  // namespace behavigram
