#pragma once

#include "behavigram/time_series.hpp"

namespace behavigram {

// Lag of b relative to a in seconds, found by maximizing the normalized
// cross-correlation of the mean-removed signals over lags in
// [-max_lag_s, +max_lag_s]. Positive result means b trails a. Both series
// must be single-channel and resampled to the same uniform rate; ties are
// broken toward the smaller |lag|.
// Throws GridMismatch, InsufficientOverlap, ZeroVariance.
double estimate_lag(const TimeSeries& a, const TimeSeries& b, double max_lag_s);

// Constant per-stream clock corrections, in seconds. A positive lag means the
// stream trails the reference, so align() subtracts it from the timestamps.
struct StreamLags {
  double accel_rh{0.0};
  double accel_lh{0.0};
  double rssi_rh{0.0};
  double rssi_lh{0.0};
  double gaze{0.0};
  double markers{0.0};
};

// Shifts every stream by its lag, renormalizes the time origin so the
// earliest sample sits at t=0, and records the applied lags in meta.
Recording align(Recording recording, const StreamLags& lags);

}  // namespace behavigram
