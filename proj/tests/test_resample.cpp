#include <doctest.h>

#include <cmath>

#include "behavigram/errors.hpp"
#include "behavigram/resample.hpp"
#include "behavigram/rng.hpp"
#include "helpers.hpp"

using namespace behavigram;
using testutil::series1;

TEST_CASE("constant series stays constant at any rate") {
  const TimeSeries s = series1({5.0, 5.0, 5.0, 5.0, 5.0}, 7.0, 0.1);
  for (double rate : {3.0, 40.0, 111.0}) {
    const TimeSeries r = resample_uniform(s, rate);
    REQUIRE(r.sample_count() > 0);
    for (double v : r.values) CHECK(v == doctest::Approx(5.0).epsilon(1e-12));
  }
}

TEST_CASE("two samples interpolate linearly onto the k/rate grid") {
  TimeSeries s;
  s.stream_id = "lin";
  s.channels = {"v"};
  s.timestamps = {0.0, 1.0};
  s.values = {0.0, 1.0};
  const TimeSeries r = resample_uniform(s, 2.0);
  REQUIRE(r.sample_count() == 3);
  CHECK(r.timestamps[0] == 0.0);
  CHECK(r.timestamps[1] == 0.5);
  CHECK(r.timestamps[2] == 1.0);
  CHECK(r.values[0] == doctest::Approx(0.0));
  CHECK(r.values[1] == doctest::Approx(0.5));
  CHECK(r.values[2] == doctest::Approx(1.0));
}

TEST_CASE("grid is anchored at integer multiples of 1/rate") {
  TimeSeries s;
  s.stream_id = "anchor";
  s.channels = {"v"};
  s.timestamps = {0.013, 0.51, 1.02};
  s.values = {1.0, 2.0, 3.0};
  const TimeSeries r = resample_uniform(s, 10.0);
  for (std::size_t i = 0; i < r.sample_count(); ++i) {
    const double k = r.timestamps[i] * 10.0;
    CHECK(std::abs(k - std::round(k)) < 1e-9);
  }
  CHECK(r.timestamps.front() == doctest::Approx(0.1));  // first grid point >= 0.013
  CHECK(r.timestamps.back() == doctest::Approx(1.0));
}

TEST_CASE("explicit missing run longer than max_gap_s stays missing") {
  // 1.0 s of missing rows between present samples, default max_gap 0.2 s.
  std::vector<double> vals;
  for (int i = 0; i <= 30; ++i) {
    const double t = i * 0.1;
    vals.push_back((t > 1.0 - 1e-9 && t < 2.0 + 1e-9) ? kMissing : t);
  }
  const TimeSeries s = series1(vals, 10.0);
  const TimeSeries r = resample_uniform(s, 10.0);
  int missing = 0;
  for (std::size_t i = 0; i < r.sample_count(); ++i) {
    if (is_missing(r.values[i])) {
      ++missing;
      CHECK(r.timestamps[i] > 0.9);
      CHECK(r.timestamps[i] < 2.1);
    }
  }
  CHECK(missing == 11);
}

TEST_CASE("short explicit missing runs are bridged") {
  const TimeSeries s = series1({0.0, kMissing, 0.2, 0.3}, 10.0);
  const TimeSeries r = resample_uniform(s, 10.0);
  REQUIRE(r.sample_count() == 4);
  CHECK(r.values[1] == doctest::Approx(0.1));  // bridged, gap 0.2 s <= max_gap
}

TEST_CASE("no extrapolation outside the present range") {
  const TimeSeries s = series1({kMissing, 1.0, 2.0, kMissing}, 10.0);
  const TimeSeries r = resample_uniform(s, 10.0);
  REQUIRE(r.sample_count() == 4);
  CHECK(is_missing(r.values[0]));
  CHECK(is_missing(r.values[3]));
  CHECK(!is_missing(r.values[1]));
}

TEST_CASE("resampling is exact on affine signals") {
  CounterRng rng(11, "affine");
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = rng.uniform(-5.0, 5.0);
    const double beta = rng.uniform(-10.0, 10.0);
    TimeSeries s;
    s.stream_id = "affine";
    s.channels = {"v"};
    double t = rng.uniform(0.0, 0.3);
    for (int i = 0; i < 50; ++i) {
      s.timestamps.push_back(t);
      s.values.push_back(alpha * t + beta);
      t += rng.uniform(0.01, 0.1);  // irregular but gap-free
    }
    const double rate = rng.uniform(20.0, 80.0);
    const TimeSeries r = resample_uniform(s, rate);
    for (std::size_t i = 0; i < r.sample_count(); ++i) {
      REQUIRE(std::abs(r.values[i] - (alpha * r.timestamps[i] + beta)) <= 1e-12);
    }
  }
}

TEST_CASE("empty series is an error") {
  TimeSeries s;
  s.stream_id = "empty";
  s.channels = {"v"};
  try {
    resample_uniform(s, 10.0);
    FAIL("expected EmptySeries");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptySeries);
  }
}

TEST_CASE("channel with fewer than two present samples stays missing") {
  const TimeSeries s = series1({kMissing, 3.0, kMissing, kMissing}, 10.0);
  const TimeSeries r = resample_uniform(s, 10.0);
  for (double v : r.values) CHECK(is_missing(v));
}

TEST_CASE("non-positive rate is rejected") {
  const TimeSeries s = series1({1.0, 2.0}, 10.0);
  CHECK_THROWS_AS(resample_uniform(s, 0.0), Error);
  CHECK_THROWS_AS(resample_uniform(s, -5.0), Error);
}
