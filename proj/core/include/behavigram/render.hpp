#pragma once

#include <string>
#include <vector>

#include "behavigram/gaze_entropy.hpp"
#include "behavigram/phases.hpp"
#include "behavigram/proximity.hpp"
#include "behavigram/time_series.hpp"

namespace behavigram {

enum class BehaviorgramVariant { Extended, Simplified };

struct BehaviorgramSpec {
  int width_px{1200};
  int height_px{400};
  // Zero span means the full velocity-grid range.
  double t_start{0.0};
  double t_end{0.0};
  BehaviorgramVariant variant{BehaviorgramVariant::Extended};
  std::string colormap{"amber"};
  int entropy_track_px{24};
  bool labels{true};
};

struct RenderInputs {
  const TimeSeries* velocity_rh{nullptr};  // 1 channel `speed`, common grid
  const TimeSeries* velocity_lh{nullptr};
  const TimeSeries* fused_rssi{nullptr};   // same grid as the velocities
  const ProximitySeries* proximity{nullptr};
  const LowEntropyMask* mask{nullptr};
  const std::vector<PhaseAnnotation>* annotations{nullptr};
};

// Affine time-to-pixel mapping, exposed so its geometry is testable.
struct TimeAxis {
  double t_min{0.0};
  double x_left{0.0};
  double px_per_s{0.0};

  double x(double t) const { return x_left + (t - t_min) * px_per_s; }
};

TimeAxis make_time_axis(double t_min, double t_max, double x_left, double width_px);

// Extended behaviorgram, top to bottom: two-lane position track
// (patient/table, Intermediate blank), mirrored accelerograph around a
// central axis (left hand above, right hand below) with per-sample bars
// colored by fused RSSI brightness, low-entropy track, and phase boundary
// lines with labels. Byte-deterministic. Throws GridMismatch, EmptyRange.
std::string render_extended(const RenderInputs& inputs, const BehaviorgramSpec& spec);

// Single combined activity track: bar height = max-hand speed, bar
// brightness = proximity state, hatch overlay = low entropy.
std::string render_simplified(const RenderInputs& inputs, const BehaviorgramSpec& spec);

// Dispatch on spec.variant.
std::string render_behaviorgram(const RenderInputs& inputs, const BehaviorgramSpec& spec);

}  // namespace behavigram
