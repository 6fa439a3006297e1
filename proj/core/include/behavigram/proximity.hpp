#pragma once

#include <string>
#include <vector>

#include "behavigram/time_series.hpp"

namespace behavigram {

enum class ProximityState { NearPatient, NearTable, Intermediate };

const char* to_string(ProximityState state);
ProximityState proximity_state_from_string(const std::string& name);  // throws MalformedFile

// Near/far RSSI reference levels from the calibration measurement. Signal
// strength decreases with distance, so rssi_near > rssi_far, and the bands
// (level +- margin) must not touch: rssi_near - rssi_far > 2*margin.
struct CalibrationModel {
  double rssi_near_dbm{0.0};
  double rssi_far_dbm{0.0};
  double margin_db{3.0};

  void validate() const;  // throws InvalidSpec / InvertedCalibration
};

// Three-state proximity on the fused-RSSI grid. Intermediate also covers
// timestamps where the fused RSSI is missing.
struct ProximitySeries {
  std::vector<double> timestamps;
  std::vector<ProximityState> states;

  std::size_t size() const { return timestamps.size(); }
};

// Per-timestamp maximum of the present hand RSSI values; one missing input
// passes the other through, both missing stays missing. Grids must match.
TimeSeries fuse_rssi(const TimeSeries& rh, const TimeSeries& lh);

// Medians of the two designated segments become the reference levels.
// Each segment needs >= 20 present samples. Throws InsufficientCalibration,
// InvertedCalibration (near median <= far median + 2*margin).
CalibrationModel calibrate(const TimeSeries& near_segment, const TimeSeries& far_segment,
                           double margin_db = 3.0);

struct DiscretizeOptions {
  // With hysteresis on, a state change requires this many consecutive grid
  // samples whose raw band is the new state.
  bool hysteresis{false};
  int hysteresis_samples{3};
};

// NearPatient iff rssi >= rssi_near - margin; NearTable iff
// rssi <= rssi_far + margin; everything else (missing included) Intermediate.
// Total: every grid timestamp gets a state.
ProximitySeries discretize(const TimeSeries& fused, const CalibrationModel& model,
                           const DiscretizeOptions& options = {});

}  // namespace behavigram
