#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "behavigram/config.hpp"
#include "behavigram/gaze_entropy.hpp"
#include "behavigram/phases.hpp"
#include "behavigram/proximity.hpp"
#include "behavigram/render.hpp"
#include "behavigram/time_series.hpp"

namespace behavigram {

// Everything cmd_analyze derives from one recording.
struct AnalysisResult {
  TimeSeries velocity_rh;  // common grid, channel `speed`
  TimeSeries velocity_lh;
  TimeSeries fused_rssi;   // common grid
  CalibrationModel calibration;
  ProximitySeries proximity;
  EntropySeries entropy;
  LowEntropyMask mask;
  std::vector<PhaseAnnotation> phases;
  std::vector<PhaseSummary> summaries;
  std::vector<SignatureCheck> verdicts;
};

// Full analysis procedure: resample, denoise, gravity removal, velocity,
// RSSI fusion + calibration + discretization, blink imputation, sliding
// entropy, low-entropy mask, phase summaries, signature verdicts.
// Calibration segments come from calib_near / calib_far markers, falling
// back to the configured time ranges; throws NoCalibrationSource when
// neither exists.
AnalysisResult analyze(const Recording& recording, const PipelineConfig& config);

// Derived-series CSV mirrors plus phase_report.csv and analysis.json.
void write_analysis(const AnalysisResult& result, const std::filesystem::path& out_dir);

// Human-readable phase table with verdicts.
std::string phase_report_text(const AnalysisResult& result);

// Entropy robustness sweep over the documented settings
// (bins 10/25/50/75/100 x windows 2/3/4/5/6 s).
SweepResult run_robustness_sweep(const Recording& recording, const PipelineConfig& config);
void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& file);

// Lag between the head-movement channel (acc_x) and vertical gaze within the
// recording's `sync` segment. Throws NoSyncSegment.
double estimate_sync_lag(const Recording& recording, const PipelineConfig& config,
                         double max_lag_s);

RenderInputs render_inputs(const AnalysisResult& result);

}  // namespace behavigram
