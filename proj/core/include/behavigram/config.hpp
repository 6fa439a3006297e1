#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "behavigram/gaze_entropy.hpp"
#include "behavigram/phases.hpp"
#include "behavigram/render.hpp"
#include "behavigram/savgol.hpp"

namespace behavigram {

// Every tunable of the analysis pipeline, grouped by the module it feeds.
// Sectioned key=value text file; unknown keys or sections are errors so a
// typo can never silently fall back to a default.
struct PipelineConfig {
  struct Streams {
    double resample_max_gap_s{0.2};
    double common_rate_hz{40.0};   // accel / RSSI analysis grid
    double gaze_rate_hz{50.0};
    double sync_max_lag_s{0.5};
    double sync_resample_hz{200.0};
  } streams;

  struct Signal {
    int savgol_window{11};
    int savgol_poly_order{3};
    double baseline_window_s{1.0};
    double velocity_half_life_s{0.5};
  } signal;

  struct Proximity {
    double margin_db{3.0};
    bool hysteresis{false};
    int hysteresis_samples{3};
    // Explicit calibration ranges, used when the marker stream has no
    // calib_near / calib_far segments. Negative = unset.
    double calib_near_start_s{-1.0};
    double calib_near_end_s{-1.0};
    double calib_far_start_s{-1.0};
    double calib_far_end_s{-1.0};
  } proximity;

  struct Gaze {
    int bins_per_axis{100};
    double window_s{5.0};
    double hop_s{0.2};
    double min_valid{0.5};
    double blink_max_s{0.5};
    int spline_support{8};
  } gaze;

  struct Phases {
    double low_activity_frac{0.25};
    double high_activity_frac{0.75};
    double high_focus_min_fraction{0.5};
    double near_patient_min_fraction{0.6};
    int alternating_min_transitions{2};
  } phases;

  struct Render {
    int width_px{1200};
    int height_px{400};
    std::string colormap{"amber"};
    int entropy_track_px{24};
    bool labels{true};
  } render;

  SavGolSpec savgol_spec() const { return {signal.savgol_window, signal.savgol_poly_order}; }
  GazeGridSpec gaze_grid_spec() const {
    return {gaze.bins_per_axis, gaze.window_s, gaze.hop_s, gaze.min_valid};
  }
  SignatureRules signature_rules() const {
    return {phases.low_activity_frac, phases.high_activity_frac,
            phases.high_focus_min_fraction, phases.near_patient_min_fraction,
            phases.alternating_min_transitions};
  }

  void validate() const;  // throws ConfigError / InvalidSpec
};

PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(const std::string& text, const std::string& origin = "config");

// Default configuration with every key present and documented.
void write_default_config(std::ostream& out);

}  // namespace behavigram
