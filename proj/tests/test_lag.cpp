#include <doctest.h>

#include <cmath>
#include <numbers>

#include "behavigram/errors.hpp"
#include "behavigram/lag.hpp"
#include "behavigram/resample.hpp"
#include "behavigram/rng.hpp"
#include "helpers.hpp"

using namespace behavigram;
using testutil::series1;

namespace {

// Band-limited test signal: sum of low-frequency sinusoids.
double band_limited(double t, CounterRng& phase_rng, const std::vector<double>& phases) {
  double v = 0.0;
  const double freqs[] = {0.3, 0.7, 1.3, 2.1};
  for (int i = 0; i < 4; ++i) v += std::sin(2.0 * std::numbers::pi * freqs[i] * t + phases[i]);
  (void)phase_rng;
  return v;
}

}  // namespace

TEST_CASE("self correlation peaks at zero lag") {
  std::vector<double> vals;
  for (int i = 0; i < 500; ++i) vals.push_back(std::sin(0.07 * i) + 0.2 * std::cos(0.31 * i));
  const TimeSeries s = series1(vals, 50.0);
  CHECK(estimate_lag(s, s, 1.0) == 0.0);
}

TEST_CASE("a copy delayed by three samples at 50 Hz gives 0.06 s") {
  std::vector<double> a, b;
  const int shift = 3;
  for (int i = 0; i < 600; ++i) {
    a.push_back(std::sin(2.0 * std::numbers::pi * 0.5 * i / 50.0));
    b.push_back(std::sin(2.0 * std::numbers::pi * 0.5 * (i - shift) / 50.0));
  }
  const double lag = estimate_lag(series1(a, 50.0), series1(b, 50.0), 0.5);
  CHECK(std::abs(lag - 0.06) <= 0.02 + 1e-12);  // within one grid step
}

TEST_CASE("lag recovery on noisy band-limited signals across the lag range") {
  CounterRng rng(21, "lag_prop");
  const double rate = 50.0;
  const double max_lag = 0.4;
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<double> phases;
    for (int i = 0; i < 4; ++i) phases.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
    const int k = static_cast<int>(std::round(rng.uniform(-max_lag * rate, max_lag * rate)));

    std::vector<double> a, b;
    for (int i = 0; i < 1200; ++i) {
      const double t = i / rate;
      // SNR well above 10 dB: signal amplitude ~2, noise sigma 0.2.
      a.push_back(band_limited(t, rng, phases) + rng.gaussian(0.0, 0.2));
      b.push_back(band_limited((i - k) / rate, rng, phases) + rng.gaussian(0.0, 0.2));
    }
    const double lag = estimate_lag(series1(a, rate), series1(b, rate), max_lag);
    REQUIRE(std::abs(lag - k / rate) <= 1.0 / rate + 1e-12);
  }
}

TEST_CASE("insufficient overlap and zero variance are rejected") {
  std::vector<double> shortv(30, 0.0);
  for (int i = 0; i < 30; ++i) shortv[static_cast<std::size_t>(i)] = std::sin(0.3 * i);
  const TimeSeries s = series1(shortv, 10.0);  // 3 s of data
  try {
    estimate_lag(s, s, 1.0);  // needs 4 s overlap
    FAIL("expected InsufficientOverlap");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientOverlap);
  }

  const TimeSeries flat = series1(std::vector<double>(300, 2.5), 10.0);
  try {
    estimate_lag(flat, flat, 1.0);
    FAIL("expected ZeroVariance");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroVariance);
  }
}

TEST_CASE("mismatched rates are rejected") {
  std::vector<double> v(300);
  for (int i = 0; i < 300; ++i) v[static_cast<std::size_t>(i)] = std::sin(0.2 * i);
  try {
    estimate_lag(series1(v, 10.0), series1(v, 20.0), 1.0);
    FAIL("expected GridMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::GridMismatch);
  }
}

namespace {

Recording tiny_recording() {
  Recording rec;
  rec.accel_rh = testutil::series3({0, 0, 0}, {0, 0, 0}, {1, 1, 1}, 40.0, 0.5);
  rec.accel_lh = rec.accel_rh;
  rec.accel_lh.stream_id = "accel_lh";
  rec.rssi_rh = series1({-50, -51}, 10.0, 0.5, "rssi_rh", "rssi");
  rec.rssi_lh = series1({-60, -61}, 10.0, 0.5, "rssi_lh", "rssi");
  rec.gaze = testutil::series3({0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, {0, 0, 0}, 50.0, 0.5);
  rec.gaze.channels = {"gaze_x", "gaze_y"};
  rec.gaze.values.clear();
  for (int i = 0; i < 3; ++i) {
    rec.gaze.values.push_back(0.5);
    rec.gaze.values.push_back(0.5);
  }
  rec.markers.events = {{0.6, "phase:I"}};
  return rec;
}

}  // namespace

TEST_CASE("align with zero lags renormalizes the origin and notes it in meta") {
  const Recording rec = tiny_recording();
  const Recording aligned = align(rec, {});
  CHECK(aligned.accel_rh.timestamps.front() == doctest::Approx(0.0));
  CHECK(aligned.markers.events[0].t == doctest::Approx(0.1));
  CHECK(aligned.meta.at("align.lag_gaze_s") == "0");
  CHECK(aligned.meta.at("align.origin_shift_s") == "0.5");
}

TEST_CASE("positive gaze lag reduces gaze timestamps before renormalization") {
  const Recording rec = tiny_recording();
  StreamLags lags;
  lags.gaze = 0.05;
  const Recording aligned = align(rec, lags);
  // Gaze started at 0.5, shifted to 0.45, which becomes the new origin.
  CHECK(aligned.gaze.timestamps.front() == doctest::Approx(0.0));
  CHECK(aligned.accel_rh.timestamps.front() == doctest::Approx(0.05));
}

TEST_CASE("align followed by align with negated lags restores timestamps") {
  const Recording rec = tiny_recording();
  StreamLags lags;
  lags.accel_rh = 0.013;
  lags.gaze = -0.041;
  lags.markers = 0.002;
  Recording once = align(rec, lags);
  StreamLags neg;
  neg.accel_rh = -lags.accel_rh;
  neg.gaze = -lags.gaze;
  neg.markers = -lags.markers;
  Recording twice = align(once, neg);

  // Realigning cancels the shifts up to one shared origin offset.
  const double off = twice.accel_rh.timestamps.front() - rec.accel_rh.timestamps.front();
  for (std::size_t i = 0; i < rec.accel_rh.timestamps.size(); ++i) {
    CHECK(std::abs(twice.accel_rh.timestamps[i] - rec.accel_rh.timestamps[i] - off) < 1e-9);
  }
  for (std::size_t i = 0; i < rec.gaze.timestamps.size(); ++i) {
    CHECK(std::abs(twice.gaze.timestamps[i] - rec.gaze.timestamps[i] - off) < 1e-9);
  }
}

TEST_CASE("non-finite lag is rejected") {
  StreamLags lags;
  lags.gaze = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(align(tiny_recording(), lags), Error);
}
