#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "behavigram/time_series.hpp"

namespace behavigram {

struct BlinkImputeOptions {
  double blink_max_s{0.5};  // longest missing run treated as a blink
  int spline_support{8};    // present samples gathered on each side of a gap
};

// Fills interior missing runs up to blink_max_s per channel with a natural
// cubic spline through the nearest spline_support present samples on each
// side, clamped to [0,1]. Longer runs, edge runs, and runs without at least
// two present neighbors per side stay missing. Present samples are never
// changed. A third channel `imputed` (0/1) marks filled rows.
// Throws NonUniformSeries.
TimeSeries impute_blinks(const TimeSeries& gaze, const BlinkImputeOptions& options = {});

struct GazeGridSpec {
  int bins_per_axis{100};
  double window_s{5.0};
  double hop_s{0.2};
  double min_valid{0.5};  // windows below this present fraction yield missing H

  void validate() const;  // throws InvalidSpec
};

// Cell of the B x B gaze state space; 1.0 maps into the last bin.
// Throws OutOfRange for values outside [0,1] or missing.
std::pair<int, int> bin_gaze(double x, double y, int bins_per_axis);

// Joint Shannon entropy in bits of the empirical cell distribution,
// H = sum P log2(1/P) with 0 log2(1/0) = 0. Throws EmptyWindow.
double joint_entropy_bits(std::span<const std::pair<int, int>> window_bins);

// Windowed entropy: channel `H` in bits plus `valid_fraction`, timestamps at
// window centers.
struct EntropySeries {
  TimeSeries series;
  double window_s{0.0};
  double hop_s{0.0};
};

// Slides windows of spec.window_s by spec.hop_s over the uniform gaze grid.
// Bins are computed over present samples only; H is emitted when the present
// fraction reaches spec.min_valid. Degenerate inputs yield missing values,
// not failures.
EntropySeries sliding_entropy(const TimeSeries& gaze, const GazeGridSpec& spec);

struct LowEntropyMask {
  std::vector<std::pair<double, double>> intervals;  // disjoint, ordered
  double threshold_bits{0.0};

  bool contains(double t) const;
  // Length of the overlap with [t0, t1).
  double overlap_s(double t0, double t1) const;
};

// Threshold = mean of present H values; intervals are maximal runs of
// windows with H strictly below it, widened by half a hop on each side.
// Throws AllMissing.
LowEntropyMask low_entropy_mask(const EntropySeries& entropy);

// Robustness sweep over bin counts x window lengths: Spearman rank
// correlation between every pair of settings, each entropy series sampled at
// shared probe times.
struct SweepResult {
  struct Setting {
    int bins_per_axis;
    double window_s;
  };
  std::vector<Setting> settings;
  std::vector<std::vector<double>> correlation;  // settings x settings
  double min_correlation() const;
};

SweepResult entropy_robustness_sweep(const TimeSeries& gaze, std::span<const int> bins,
                                     std::span<const double> windows_s, double hop_s,
                                     double min_valid = 0.5);

}  // namespace behavigram
