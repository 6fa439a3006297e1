#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace behavigram {

// Missing samples travel as quiet NaN so arithmetic cannot silently treat
// them as zeros. Every consumer checks is_missing() before using a value.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

// Universal carrier between pipeline stages: one or more channels sampled at
// explicit timestamps (seconds from session start). May be irregular until
// resampled; uniform_dt() is the gate used by grid-only operations.
struct TimeSeries {
  std::string stream_id;
  std::vector<std::string> channels;
  std::vector<double> timestamps;  // strictly increasing
  std::vector<double> values;      // row-major, sample_count() * channel_count()
  std::optional<double> nominal_rate_hz;

  // Notes attached by producing operations (units, edge effects, parameter
  // choices that affect interpretation downstream).
  std::map<std::string, std::string> annotations;

  std::size_t sample_count() const { return timestamps.size(); }
  std::size_t channel_count() const { return channels.size(); }
  bool empty() const { return timestamps.empty(); }

  double at(std::size_t sample, std::size_t channel) const {
    return values[sample * channels.size() + channel];
  }
  double& at(std::size_t sample, std::size_t channel) {
    return values[sample * channels.size() + channel];
  }

  std::span<const double> row(std::size_t sample) const {
    return {values.data() + sample * channels.size(), channels.size()};
  }

  double start_time() const { return timestamps.front(); }
  double end_time() const { return timestamps.back(); }

  // -1 when the channel name is absent.
  int channel_index(const std::string& name) const;

  // Grid spacing of a uniformly sampled series. Throws NonUniformSeries when
  // any timestamp deviates from the affine grid by more than tol_s, or the
  // series has fewer than two samples.
  double uniform_dt(double tol_s = 1e-6) const;

  bool is_uniform(double tol_s = 1e-6) const;

  // Structural invariants: strictly increasing timestamps and a full value
  // row per timestamp. Throws NonMonotoneTimestamps / MalformedFile.
  void validate() const;

  // Empty series laid out on the grid t_k = t0 + k/rate, all values missing.
  static TimeSeries on_grid(std::string id, std::vector<std::string> channel_names,
                            double t0, double rate_hz, std::size_t n);
};

// Single-channel view copied out of a multi-channel series.
TimeSeries extract_channel(const TimeSeries& series, std::size_t channel);
TimeSeries extract_channel(const TimeSeries& series, const std::string& channel_name);

// Samples with timestamps in [t_start, t_end).
TimeSeries slice_time(const TimeSeries& series, double t_start, double t_end);

struct MarkerEvent {
  double t{0.0};
  std::string label;
};

// Live-annotation events used to sequence the recording (phase boundaries,
// calibration and sync segments).
struct MarkerStream {
  std::vector<MarkerEvent> events;

  void validate() const;  // non-decreasing timestamps, non-empty labels

  // First event with the given label, or nullptr.
  const MarkerEvent* find(const std::string& label) const;

  // Segment opened by the first marker with `label` and closed by the next
  // marker of any label (or fallback_end). nullopt when the label is absent.
  std::optional<std::pair<double, double>> segment(const std::string& label,
                                                   double fallback_end) const;
};

// A session's worth of aligned streams sharing one clock.
struct Recording {
  TimeSeries accel_rh;  // 3 channels acc_x/acc_y/acc_z, unit g, nominal 40 Hz
  TimeSeries accel_lh;
  TimeSeries rssi_rh;   // 1 channel, dBm
  TimeSeries rssi_lh;
  TimeSeries gaze;      // 2 channels gaze_x/gaze_y in [0,1], nominal 50 Hz
  MarkerStream markers;
  std::map<std::string, std::string> meta;

  // [earliest, latest] sample or marker time over all streams.
  std::pair<double, double> span() const;

  std::vector<const TimeSeries*> stream_list() const;
  std::vector<TimeSeries*> stream_list();
};

}  // namespace behavigram
