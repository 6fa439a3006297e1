#pragma once

#include "behavigram/time_series.hpp"

namespace behavigram {

// Conversion applied when turning file-unit acceleration (g) into m/s^2.
inline constexpr double kGravityMps2 = 9.81;

struct GravityRemovalOptions {
  double baseline_window_s{1.0};  // moving-average window
};

// Subtracts the per-channel moving-average baseline (quasi-static gravity
// component) and converts g to m/s^2. The averaging window shrinks at the
// series edges. Throws NonUniformSeries.
TimeSeries remove_gravity(const TimeSeries& accel_g,
                          const GravityRemovalOptions& options = {});

// Decay factor per sample giving the requested half-life at the given rate.
double leak_for_half_life(double half_life_s, double rate_hz);

// Leaky trapezoidal integration per axis,
//   v[k] = leak * v[k-1] + dt * (a[k] + a[k-1]) / 2,  v[0] = 0,
// followed by the Euclidean norm over the three axis velocities. The output
// has a single channel `speed` (m/s). A missing input sample yields a missing
// speed and restarts integration from zero after the gap. leak in (0,1].
// Throws NonUniformSeries, InvalidSpec.
TimeSeries velocity_magnitude(const TimeSeries& linear_accel_mps2, double leak);

}  // namespace behavigram
