#include "behavigram/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "behavigram/errors.hpp"

namespace behavigram {

int TimeSeries::channel_index(const std::string& name) const {
  for (std::size_t c = 0; c < channels.size(); ++c) {
    if (channels[c] == name) return static_cast<int>(c);
  }
  return -1;
}

double TimeSeries::uniform_dt(double tol_s) const {
  if (sample_count() < 2) {
    fail(Errc::NonUniformSeries,
         "series '" + stream_id + "' has fewer than two samples, no grid spacing");
  }
  const double t0 = timestamps.front();
  const double dt = (timestamps.back() - t0) / static_cast<double>(sample_count() - 1);
  if (!(dt > 0.0)) {
    fail(Errc::NonUniformSeries, "series '" + stream_id + "' has non-positive grid spacing");
  }
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    const double expected = t0 + static_cast<double>(i) * dt;
    if (std::abs(timestamps[i] - expected) > tol_s) {
      fail(Errc::NonUniformSeries,
           "series '" + stream_id + "' is not uniformly sampled near t=" +
               std::to_string(timestamps[i]));
    }
  }
  return dt;
}

bool TimeSeries::is_uniform(double tol_s) const {
  if (sample_count() < 2) return false;
  try {
    uniform_dt(tol_s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void TimeSeries::validate() const {
  if (values.size() != timestamps.size() * channels.size()) {
    fail(Errc::MalformedFile,
         "series '" + stream_id + "': value count " + std::to_string(values.size()) +
             " does not match " + std::to_string(timestamps.size()) + " samples x " +
             std::to_string(channels.size()) + " channels");
  }
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (!(timestamps[i] > timestamps[i - 1])) {
      fail(Errc::NonMonotoneTimestamps,
           "series '" + stream_id + "': timestamp " + std::to_string(timestamps[i]) +
               " at row " + std::to_string(i + 1) + " does not increase");
    }
  }
  for (double t : timestamps) {
    if (!std::isfinite(t)) {
      fail(Errc::MalformedFile, "series '" + stream_id + "': non-finite timestamp");
    }
  }
}

TimeSeries TimeSeries::on_grid(std::string id, std::vector<std::string> channel_names,
                               double t0, double rate_hz, std::size_t n) {
  TimeSeries out;
  out.stream_id = std::move(id);
  out.channels = std::move(channel_names);
  out.nominal_rate_hz = rate_hz;
  out.timestamps.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.timestamps[k] = t0 + static_cast<double>(k) / rate_hz;
  }
  out.values.assign(n * out.channels.size(), kMissing);
  return out;
}

TimeSeries extract_channel(const TimeSeries& series, std::size_t channel) {
  TimeSeries out;
  out.stream_id = series.stream_id + "." + series.channels.at(channel);
  out.channels = {series.channels[channel]};
  out.timestamps = series.timestamps;
  out.nominal_rate_hz = series.nominal_rate_hz;
  out.values.resize(series.sample_count());
  for (std::size_t i = 0; i < series.sample_count(); ++i) {
    out.values[i] = series.at(i, channel);
  }
  return out;
}

TimeSeries extract_channel(const TimeSeries& series, const std::string& channel_name) {
  const int c = series.channel_index(channel_name);
  if (c < 0) {
    fail(Errc::InvalidSpec,
         "series '" + series.stream_id + "' has no channel '" + channel_name + "'");
  }
  return extract_channel(series, static_cast<std::size_t>(c));
}

TimeSeries slice_time(const TimeSeries& series, double t_start, double t_end) {
  TimeSeries out;
  out.stream_id = series.stream_id;
  out.channels = series.channels;
  out.nominal_rate_hz = series.nominal_rate_hz;
  const auto lo = std::lower_bound(series.timestamps.begin(), series.timestamps.end(), t_start);
  const auto hi = std::lower_bound(series.timestamps.begin(), series.timestamps.end(), t_end);
  const std::size_t i0 = static_cast<std::size_t>(lo - series.timestamps.begin());
  const std::size_t i1 = static_cast<std::size_t>(hi - series.timestamps.begin());
  out.timestamps.assign(series.timestamps.begin() + i0, series.timestamps.begin() + i1);
  const std::size_t nch = series.channel_count();
  out.values.assign(series.values.begin() + i0 * nch, series.values.begin() + i1 * nch);
  return out;
}

void MarkerStream::validate() const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].label.empty()) {
      fail(Errc::MalformedFile, "marker at row " + std::to_string(i + 1) + " has empty label");
    }
    if (i > 0 && events[i].t < events[i - 1].t) {
      fail(Errc::NonMonotoneTimestamps,
           "marker timestamps decrease at row " + std::to_string(i + 1));
    }
  }
}

const MarkerEvent* MarkerStream::find(const std::string& label) const {
  for (const auto& e : events) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

std::optional<std::pair<double, double>> MarkerStream::segment(const std::string& label,
                                                               double fallback_end) const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].label != label) continue;
    const double t0 = events[i].t;
    const double t1 = (i + 1 < events.size()) ? events[i + 1].t : fallback_end;
    return std::make_pair(t0, t1);
  }
  return std::nullopt;
}

std::pair<double, double> Recording::span() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const TimeSeries* s : stream_list()) {
    if (s->empty()) continue;
    lo = std::min(lo, s->start_time());
    hi = std::max(hi, s->end_time());
  }
  for (const auto& e : markers.events) {
    lo = std::min(lo, e.t);
    hi = std::max(hi, e.t);
  }
  if (!(lo <= hi)) fail(Errc::EmptySeries, "recording has no samples");
  return {lo, hi};
}

std::vector<const TimeSeries*> Recording::stream_list() const {
  return {&accel_rh, &accel_lh, &rssi_rh, &rssi_lh, &gaze};
}

std::vector<TimeSeries*> Recording::stream_list() {
  return {&accel_rh, &accel_lh, &rssi_rh, &rssi_lh, &gaze};
}

}  // namespace behavigram
