#include "behavigram/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"

namespace behavigram {

const char* to_string(ProximityState state) {
  switch (state) {
    case ProximityState::NearPatient: return "NearPatient";
    case ProximityState::NearTable: return "NearTable";
    case ProximityState::Intermediate: return "Intermediate";
  }
  return "Intermediate";
}

ProximityState proximity_state_from_string(const std::string& name) {
  if (name == "NearPatient") return ProximityState::NearPatient;
  if (name == "NearTable") return ProximityState::NearTable;
  if (name == "Intermediate") return ProximityState::Intermediate;
  fail(Errc::MalformedFile, "unknown proximity state '" + name + "'");
}

void CalibrationModel::validate() const {
  if (!(margin_db > 0.0)) fail(Errc::InvalidSpec, "calibration margin must be positive");
  if (!(rssi_near_dbm - rssi_far_dbm > 2.0 * margin_db)) {
    fail(Errc::InvertedCalibration,
         "near level " + csv::format_number(rssi_near_dbm) + " dBm does not exceed far level " +
             csv::format_number(rssi_far_dbm) + " dBm by more than 2*margin");
  }
}

TimeSeries fuse_rssi(const TimeSeries& rh, const TimeSeries& lh) {
  if (rh.channel_count() != 1 || lh.channel_count() != 1) {
    fail(Errc::InvalidSpec, "fuse_rssi expects single-channel series");
  }
  if (rh.sample_count() != lh.sample_count()) {
    fail(Errc::GridMismatch, "rssi streams have different sample counts");
  }
  for (std::size_t i = 0; i < rh.sample_count(); ++i) {
    if (std::abs(rh.timestamps[i] - lh.timestamps[i]) > 1e-9) {
      fail(Errc::GridMismatch, "rssi streams are on different grids near t=" +
                                   csv::format_number(rh.timestamps[i]));
    }
  }

  TimeSeries out;
  out.stream_id = "rssi_fused";
  out.channels = {"rssi"};
  out.timestamps = rh.timestamps;
  out.nominal_rate_hz = rh.nominal_rate_hz;
  out.values.resize(rh.sample_count());
  for (std::size_t i = 0; i < rh.sample_count(); ++i) {
    const double a = rh.values[i];
    const double b = lh.values[i];
    if (is_missing(a)) {
      out.values[i] = b;  // passthrough, stays missing when both are
    } else if (is_missing(b)) {
      out.values[i] = a;
    } else {
      out.values[i] = std::max(a, b);
    }
  }
  return out;
}

namespace {

double present_median(const TimeSeries& segment, const char* which, std::size_t min_samples) {
  std::vector<double> vals;
  vals.reserve(segment.sample_count());
  for (double v : segment.values) {
    if (!is_missing(v)) vals.push_back(v);
  }
  if (vals.size() < min_samples) {
    fail(Errc::InsufficientCalibration,
         std::string(which) + " calibration segment has " + std::to_string(vals.size()) +
             " present samples, need >= " + std::to_string(min_samples));
  }
  std::sort(vals.begin(), vals.end());
  const std::size_t n = vals.size();
  return (n % 2 == 1) ? vals[n / 2] : 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

}  // namespace

CalibrationModel calibrate(const TimeSeries& near_segment, const TimeSeries& far_segment,
                           double margin_db) {
  CalibrationModel model;
  model.margin_db = margin_db;
  model.rssi_near_dbm = present_median(near_segment, "near", 20);
  model.rssi_far_dbm = present_median(far_segment, "far", 20);
  model.validate();
  return model;
}

ProximitySeries discretize(const TimeSeries& fused, const CalibrationModel& model,
                           const DiscretizeOptions& options) {
  model.validate();
  if (fused.channel_count() != 1) fail(Errc::InvalidSpec, "discretize expects one channel");

  const auto raw_state = [&](double rssi) {
    if (is_missing(rssi)) return ProximityState::Intermediate;
    if (rssi >= model.rssi_near_dbm - model.margin_db) return ProximityState::NearPatient;
    if (rssi <= model.rssi_far_dbm + model.margin_db) return ProximityState::NearTable;
    return ProximityState::Intermediate;
  };

  ProximitySeries out;
  out.timestamps = fused.timestamps;
  out.states.resize(fused.sample_count(), ProximityState::Intermediate);

  if (!options.hysteresis) {
    for (std::size_t i = 0; i < fused.sample_count(); ++i) {
      out.states[i] = raw_state(fused.values[i]);
    }
    return out;
  }

  // A change sticks only after `hysteresis_samples` consecutive raw samples
  // in the new band.
  const int needed = std::max(1, options.hysteresis_samples);
  ProximityState current = fused.sample_count() > 0 ? raw_state(fused.values[0])
                                                    : ProximityState::Intermediate;
  ProximityState pending = current;
  int run = 0;
  for (std::size_t i = 0; i < fused.sample_count(); ++i) {
    const ProximityState raw = raw_state(fused.values[i]);
    if (raw == current) {
      run = 0;
    } else if (raw == pending) {
      if (++run >= needed) {
        current = pending;
        run = 0;
      }
    } else {
      pending = raw;
      run = 1;
      if (run >= needed) {
        current = pending;
        run = 0;
      }
    }
    out.states[i] = current;
  }
  return out;
}

}  // namespace behavigram
