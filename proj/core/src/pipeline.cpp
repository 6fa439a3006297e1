#include "behavigram/pipeline.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"
#include "behavigram/kinematics.hpp"
#include "behavigram/lag.hpp"
#include "behavigram/resample.hpp"
#include "behavigram/savgol.hpp"

namespace behavigram {

namespace {

TimeSeries hand_velocity(const TimeSeries& accel, const PipelineConfig& cfg) {
  const ResampleOptions gaps{cfg.streams.resample_max_gap_s};
  TimeSeries series = resample_uniform(accel, cfg.streams.common_rate_hz, gaps);
  series = savgol_filter(series, cfg.savgol_spec());
  series = remove_gravity(series, {cfg.signal.baseline_window_s});
  const double leak =
      leak_for_half_life(cfg.signal.velocity_half_life_s, cfg.streams.common_rate_hz);
  return velocity_magnitude(series, leak);
}

std::pair<double, double> calibration_segment(const Recording& rec, const char* marker,
                                              double cfg_start, double cfg_end) {
  const double rec_end = rec.span().second;
  if (const auto seg = rec.markers.segment(marker, rec_end)) return *seg;
  if (cfg_start >= 0.0 && cfg_end > cfg_start) return {cfg_start, cfg_end};
  fail(Errc::NoCalibrationSource,
       std::string("no calibration source: no '") + marker +
           "' marker and no configured time range");
}

}  // namespace

AnalysisResult analyze(const Recording& recording, const PipelineConfig& config) {
  config.validate();
  AnalysisResult out;

  out.velocity_rh = hand_velocity(recording.accel_rh, config);
  out.velocity_rh.stream_id = "velocity_rh";
  out.velocity_lh = hand_velocity(recording.accel_lh, config);
  out.velocity_lh.stream_id = "velocity_lh";

  const ResampleOptions gaps{config.streams.resample_max_gap_s};
  TimeSeries rssi_rh = resample_uniform(recording.rssi_rh, config.streams.common_rate_hz, gaps);
  TimeSeries rssi_lh = resample_uniform(recording.rssi_lh, config.streams.common_rate_hz, gaps);

  // RSSI and velocity grids can differ by a few edge samples (different
  // stream spans); trim everything to the shared index range so fusion,
  // discretization, and rendering sit on one grid.
  {
    const double t0 = std::max({out.velocity_rh.start_time(), out.velocity_lh.start_time(),
                                rssi_rh.start_time(), rssi_lh.start_time()});
    const double t1 = std::min({out.velocity_rh.end_time(), out.velocity_lh.end_time(),
                                rssi_rh.end_time(), rssi_lh.end_time()});
    if (!(t1 > t0)) fail(Errc::EmptyRange, "streams share no common time range");
    const double dt = 1.0 / config.streams.common_rate_hz;
    out.velocity_rh = slice_time(out.velocity_rh, t0 - dt / 2, t1 + dt / 2);
    out.velocity_lh = slice_time(out.velocity_lh, t0 - dt / 2, t1 + dt / 2);
    rssi_rh = slice_time(rssi_rh, t0 - dt / 2, t1 + dt / 2);
    rssi_lh = slice_time(rssi_lh, t0 - dt / 2, t1 + dt / 2);
  }

  out.fused_rssi = fuse_rssi(rssi_rh, rssi_lh);

  const auto near_seg =
      calibration_segment(recording, "calib_near", config.proximity.calib_near_start_s,
                          config.proximity.calib_near_end_s);
  const auto far_seg =
      calibration_segment(recording, "calib_far", config.proximity.calib_far_start_s,
                          config.proximity.calib_far_end_s);
  out.calibration =
      calibrate(slice_time(out.fused_rssi, near_seg.first, near_seg.second),
                slice_time(out.fused_rssi, far_seg.first, far_seg.second),
                config.proximity.margin_db);

  DiscretizeOptions disc;
  disc.hysteresis = config.proximity.hysteresis;
  disc.hysteresis_samples = config.proximity.hysteresis_samples;
  out.proximity = discretize(out.fused_rssi, out.calibration, disc);

  TimeSeries gaze = resample_uniform(recording.gaze, config.streams.gaze_rate_hz, gaps);
  gaze = impute_blinks(gaze, {config.gaze.blink_max_s, config.gaze.spline_support});
  out.entropy = sliding_entropy(gaze, config.gaze_grid_spec());
  out.mask = low_entropy_mask(out.entropy);

  out.phases = phases_from_markers(recording.markers, recording.span());
  for (const auto& annotation : out.phases) {
    out.summaries.push_back(summarize_phase(annotation, out.velocity_rh, out.velocity_lh,
                                            out.proximity, out.mask, recording.markers));
  }
  out.verdicts = match_signatures(out.summaries, config.signature_rules());
  return out;
}

namespace {

void write_one_channel_csv(const std::filesystem::path& file, const TimeSeries& s,
                           const std::string& value_column) {
  std::ofstream out(file);
  if (!out) fail(Errc::MissingFile, "cannot write " + file.string());
  out << "t," << value_column << '\n';
  for (std::size_t i = 0; i < s.sample_count(); ++i) {
    out << csv::format_number(s.timestamps[i]) << ',' << csv::format_number(s.at(i, 0)) << '\n';
  }
}

}  // namespace

void write_analysis(const AnalysisResult& r, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  write_one_channel_csv(out_dir / "velocity_rh.csv", r.velocity_rh, "speed");
  write_one_channel_csv(out_dir / "velocity_lh.csv", r.velocity_lh, "speed");
  write_one_channel_csv(out_dir / "rssi_fused.csv", r.fused_rssi, "rssi");

  {
    std::ofstream out(out_dir / "proximity.csv");
    out << "t,state\n";
    for (std::size_t i = 0; i < r.proximity.size(); ++i) {
      out << csv::format_number(r.proximity.timestamps[i]) << ','
          << to_string(r.proximity.states[i]) << '\n';
    }
  }
  {
    std::ofstream out(out_dir / "entropy.csv");
    out << "t,H,valid_fraction\n";
    const TimeSeries& s = r.entropy.series;
    for (std::size_t i = 0; i < s.sample_count(); ++i) {
      out << csv::format_number(s.timestamps[i]) << ',' << csv::format_number(s.at(i, 0)) << ','
          << csv::format_number(s.at(i, 1)) << '\n';
    }
  }
  {
    std::ofstream out(out_dir / "low_entropy_mask.csv");
    out << "t_start,t_end\n";
    for (const auto& [a, b] : r.mask.intervals) {
      out << csv::format_number(a) << ',' << csv::format_number(b) << '\n';
    }
  }
  {
    std::ofstream out(out_dir / "phase_report.csv");
    out << "label,t_start,t_end,duration_s,mean_speed_rh,p95_speed_rh,mean_speed_lh,"
           "p95_speed_lh,frac_near_patient,frac_near_table,frac_intermediate,"
           "low_entropy_fraction,proximity_transitions,marker_count,verdict,detail\n";
    for (std::size_t i = 0; i < r.summaries.size(); ++i) {
      const auto& s = r.summaries[i];
      const auto& v = r.verdicts[i];
      std::string detail = v.detail;
      for (char& c : detail) {
        if (c == ',') c = ';';
      }
      out << s.label << ',' << csv::format_number(s.t_start) << ','
          << csv::format_number(s.t_end) << ',' << csv::format_number(s.duration_s) << ','
          << csv::format_number(s.mean_speed_rh) << ',' << csv::format_number(s.p95_speed_rh)
          << ',' << csv::format_number(s.mean_speed_lh) << ','
          << csv::format_number(s.p95_speed_lh) << ','
          << csv::format_number(s.frac_near_patient) << ','
          << csv::format_number(s.frac_near_table) << ','
          << csv::format_number(s.frac_intermediate) << ','
          << csv::format_number(s.low_entropy_fraction) << ',' << s.proximity_transitions << ','
          << s.marker_count << ',' << to_string(v.verdict) << ',' << detail << '\n';
    }
  }
  {
    nlohmann::json j;
    j["calibration"]["rssi_near_dbm"] = r.calibration.rssi_near_dbm;
    j["calibration"]["rssi_far_dbm"] = r.calibration.rssi_far_dbm;
    j["calibration"]["margin_db"] = r.calibration.margin_db;
    j["entropy"]["threshold_bits"] = r.mask.threshold_bits;
    j["entropy"]["window_s"] = r.entropy.window_s;
    j["entropy"]["hop_s"] = r.entropy.hop_s;
    std::ofstream out(out_dir / "analysis.json");
    out << j.dump(2) << '\n';
  }
}

std::string phase_report_text(const AnalysisResult& r) {
  std::ostringstream out;
  out << "phase      t_start    t_end  mean_rh  mean_lh  patient    table  low_ent  trans  verdict\n";
  char line[256];
  for (std::size_t i = 0; i < r.summaries.size(); ++i) {
    const auto& s = r.summaries[i];
    std::snprintf(line, sizeof(line),
                  "%-8s %9.2f %8.2f %8.3f %8.3f %8.2f %8.2f %8.2f %6d  %s",
                  s.label.c_str(), s.t_start, s.t_end, s.mean_speed_rh, s.mean_speed_lh,
                  s.frac_near_patient, s.frac_near_table, s.low_entropy_fraction,
                  s.proximity_transitions, to_string(r.verdicts[i].verdict));
    out << line;
    if (!r.verdicts[i].detail.empty()) out << "  (" << r.verdicts[i].detail << ")";
    out << '\n';
  }
  out << "entropy threshold: " << csv::format_number(r.mask.threshold_bits) << " bits\n";
  return out.str();
}

SweepResult run_robustness_sweep(const Recording& recording, const PipelineConfig& config) {
  const ResampleOptions gaps{config.streams.resample_max_gap_s};
  TimeSeries gaze = resample_uniform(recording.gaze, config.streams.gaze_rate_hz, gaps);
  gaze = impute_blinks(gaze, {config.gaze.blink_max_s, config.gaze.spline_support});
  const std::array<int, 5> bins = {10, 25, 50, 75, 100};
  const std::array<double, 5> windows = {2.0, 3.0, 4.0, 5.0, 6.0};
  return entropy_robustness_sweep(gaze, bins, windows, config.gaze.hop_s, config.gaze.min_valid);
}

void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) fail(Errc::MissingFile, "cannot write " + file.string());
  out << "setting";
  for (const auto& s : sweep.settings) {
    out << ",B" << s.bins_per_axis << "_w" << csv::format_number(s.window_s);
  }
  out << '\n';
  for (std::size_t i = 0; i < sweep.settings.size(); ++i) {
    out << 'B' << sweep.settings[i].bins_per_axis << "_w"
        << csv::format_number(sweep.settings[i].window_s);
    for (std::size_t j = 0; j < sweep.settings.size(); ++j) {
      out << ',' << csv::format_number(sweep.correlation[i][j]);
    }
    out << '\n';
  }
}

double estimate_sync_lag(const Recording& recording, const PipelineConfig& config,
                         double max_lag_s) {
  const auto seg = recording.markers.segment("sync", recording.span().second);
  if (!seg) fail(Errc::NoSyncSegment, "no 'sync' marker in markers.csv");

  TimeSeries acc_x = extract_channel(recording.accel_rh, "acc_x");
  TimeSeries gaze_y = extract_channel(recording.gaze, "gaze_y");
  acc_x = slice_time(acc_x, seg->first, seg->second);
  gaze_y = slice_time(gaze_y, seg->first, seg->second);

  const ResampleOptions gaps{config.streams.resample_max_gap_s};
  acc_x = resample_uniform(acc_x, config.streams.sync_resample_hz, gaps);
  gaze_y = resample_uniform(gaze_y, config.streams.sync_resample_hz, gaps);
  return estimate_lag(acc_x, gaze_y, max_lag_s);
}

RenderInputs render_inputs(const AnalysisResult& result) {
  RenderInputs in;
  in.velocity_rh = &result.velocity_rh;
  in.velocity_lh = &result.velocity_lh;
  in.fused_rssi = &result.fused_rssi;
  in.proximity = &result.proximity;
  in.mask = &result.mask;
  in.annotations = &result.phases;
  return in;
}

}  // namespace behavigram
