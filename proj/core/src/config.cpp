#include "behavigram/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "behavigram/errors.hpp"

namespace behavigram {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& value, const std::string& key) {
  double v = 0.0;
  const char* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    fail(Errc::ConfigError, "key '" + key + "': cannot parse number '" + value + "'");
  }
  return v;
}

int parse_int(const std::string& value, const std::string& key) {
  int v = 0;
  const char* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    fail(Errc::ConfigError, "key '" + key + "': cannot parse integer '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  fail(Errc::ConfigError, "key '" + key + "': cannot parse boolean '" + value + "'");
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(streams.common_rate_hz > 0.0) || !(streams.gaze_rate_hz > 0.0)) {
    fail(Errc::ConfigError, "stream rates must be positive");
  }
  if (!(streams.resample_max_gap_s > 0.0)) fail(Errc::ConfigError, "max gap must be positive");
  if (!(streams.sync_max_lag_s > 0.0) || !(streams.sync_resample_hz > 0.0)) {
    fail(Errc::ConfigError, "sync parameters must be positive");
  }
  savgol_spec().validate();
  if (!(signal.baseline_window_s > 0.0) || !(signal.velocity_half_life_s > 0.0)) {
    fail(Errc::ConfigError, "signal windows must be positive");
  }
  if (!(proximity.margin_db > 0.0)) fail(Errc::ConfigError, "margin_db must be positive");
  if (proximity.hysteresis_samples < 1) {
    fail(Errc::ConfigError, "hysteresis_samples must be >= 1");
  }
  gaze_grid_spec().validate();
  if (!(gaze.blink_max_s > 0.0)) fail(Errc::ConfigError, "blink_max_s must be positive");
  if (gaze.spline_support < 2) fail(Errc::ConfigError, "spline_support must be >= 2");
  if (render.width_px <= 0 || render.height_px <= 0 || render.entropy_track_px <= 0) {
    fail(Errc::ConfigError, "render dimensions must be positive");
  }
}

PipelineConfig parse_config(const std::string& text, const std::string& origin) {
  PipelineConfig cfg;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, std::map<std::string, Setter>> schema = {
      {"streams",
       {
           {"resample_max_gap_s", [&](const std::string& k, const std::string& v) { cfg.streams.resample_max_gap_s = parse_double(v, k); }},
           {"common_rate_hz", [&](const std::string& k, const std::string& v) { cfg.streams.common_rate_hz = parse_double(v, k); }},
           {"gaze_rate_hz", [&](const std::string& k, const std::string& v) { cfg.streams.gaze_rate_hz = parse_double(v, k); }},
           {"sync_max_lag_s", [&](const std::string& k, const std::string& v) { cfg.streams.sync_max_lag_s = parse_double(v, k); }},
           {"sync_resample_hz", [&](const std::string& k, const std::string& v) { cfg.streams.sync_resample_hz = parse_double(v, k); }},
       }},
      {"signal",
       {
           {"savgol_window", [&](const std::string& k, const std::string& v) { cfg.signal.savgol_window = parse_int(v, k); }},
           {"savgol_poly_order", [&](const std::string& k, const std::string& v) { cfg.signal.savgol_poly_order = parse_int(v, k); }},
           {"baseline_window_s", [&](const std::string& k, const std::string& v) { cfg.signal.baseline_window_s = parse_double(v, k); }},
           {"velocity_half_life_s", [&](const std::string& k, const std::string& v) { cfg.signal.velocity_half_life_s = parse_double(v, k); }},
       }},
      {"proximity",
       {
           {"margin_db", [&](const std::string& k, const std::string& v) { cfg.proximity.margin_db = parse_double(v, k); }},
           {"hysteresis", [&](const std::string& k, const std::string& v) { cfg.proximity.hysteresis = parse_bool(v, k); }},
           {"hysteresis_samples", [&](const std::string& k, const std::string& v) { cfg.proximity.hysteresis_samples = parse_int(v, k); }},
           {"calib_near_start_s", [&](const std::string& k, const std::string& v) { cfg.proximity.calib_near_start_s = parse_double(v, k); }},
           {"calib_near_end_s", [&](const std::string& k, const std::string& v) { cfg.proximity.calib_near_end_s = parse_double(v, k); }},
           {"calib_far_start_s", [&](const std::string& k, const std::string& v) { cfg.proximity.calib_far_start_s = parse_double(v, k); }},
           {"calib_far_end_s", [&](const std::string& k, const std::string& v) { cfg.proximity.calib_far_end_s = parse_double(v, k); }},
       }},
      {"gaze",
       {
           {"bins_per_axis", [&](const std::string& k, const std::string& v) { cfg.gaze.bins_per_axis = parse_int(v, k); }},
           {"window_s", [&](const std::string& k, const std::string& v) { cfg.gaze.window_s = parse_double(v, k); }},
           {"hop_s", [&](const std::string& k, const std::string& v) { cfg.gaze.hop_s = parse_double(v, k); }},
           {"min_valid", [&](const std::string& k, const std::string& v) { cfg.gaze.min_valid = parse_double(v, k); }},
           {"blink_max_s", [&](const std::string& k, const std::string& v) { cfg.gaze.blink_max_s = parse_double(v, k); }},
           {"spline_support", [&](const std::string& k, const std::string& v) { cfg.gaze.spline_support = parse_int(v, k); }},
       }},
      {"phases",
       {
           {"low_activity_frac", [&](const std::string& k, const std::string& v) { cfg.phases.low_activity_frac = parse_double(v, k); }},
           {"high_activity_frac", [&](const std::string& k, const std::string& v) { cfg.phases.high_activity_frac = parse_double(v, k); }},
           {"high_focus_min_fraction", [&](const std::string& k, const std::string& v) { cfg.phases.high_focus_min_fraction = parse_double(v, k); }},
           {"near_patient_min_fraction", [&](const std::string& k, const std::string& v) { cfg.phases.near_patient_min_fraction = parse_double(v, k); }},
           {"alternating_min_transitions", [&](const std::string& k, const std::string& v) { cfg.phases.alternating_min_transitions = parse_int(v, k); }},
       }},
      {"render",
       {
           {"width_px", [&](const std::string& k, const std::string& v) { cfg.render.width_px = parse_int(v, k); }},
           {"height_px", [&](const std::string& k, const std::string& v) { cfg.render.height_px = parse_int(v, k); }},
           {"colormap", [&](const std::string&, const std::string& v) { cfg.render.colormap = v; }},
           {"entropy_track_px", [&](const std::string& k, const std::string& v) { cfg.render.entropy_track_px = parse_int(v, k); }},
           {"labels", [&](const std::string& k, const std::string& v) { cfg.render.labels = parse_bool(v, k); }},
       }},
  };

  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        fail(Errc::ConfigError, origin + ":" + std::to_string(line_no) + ": malformed section");
      }
      section = trim(t.substr(1, t.size() - 2));
      if (schema.find(section) == schema.end()) {
        fail(Errc::ConfigError,
             origin + ":" + std::to_string(line_no) + ": unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      fail(Errc::ConfigError,
           origin + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty()) {
      fail(Errc::ConfigError,
           origin + ":" + std::to_string(line_no) + ": key '" + key + "' outside any section");
    }
    const auto& keys = schema.at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) {
      fail(Errc::ConfigError, origin + ":" + std::to_string(line_no) + ": unknown key '" + key +
                                  "' in [" + section + "]");
    }
    it->second(key, value);
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::MissingFile, "missing config file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text, path.filename().string());
}

void write_default_config(std::ostream& out) {
  out << R"(# behavigram pipeline configuration (defaults)

[streams]
# Linear interpolation bridges explicit missing runs up to this span.
resample_max_gap_s = 0.2
# Analysis grid for acceleration, velocity, and RSSI.
common_rate_hz = 40
# Gaze stays on its own grid.
gaze_rate_hz = 50
# Search range and grid for sync-segment lag estimation.
sync_max_lag_s = 0.5
sync_resample_hz = 200

[signal]
# Savitzky-Golay denoising; window is in samples of the common grid.
savgol_window = 11
savgol_poly_order = 3
# Moving-average window that removes the quasi-static gravity component.
baseline_window_s = 1.0
# Decay half-life of the leaky velocity integrator.
velocity_half_life_s = 0.5

[proximity]
# Dead band around the calibration levels.
margin_db = 3
# Require consecutive samples in the new band before a state change.
hysteresis = false
hysteresis_samples = 3
# Explicit calibration windows (seconds); used only when markers.csv has no
# calib_near / calib_far segments. Negative means unset.
calib_near_start_s = -1
calib_near_end_s = -1
calib_far_start_s = -1
calib_far_end_s = -1

[gaze]
# Gaze plane is discretized into bins_per_axis^2 cells.
bins_per_axis = 100
# Sliding entropy window and hop.
window_s = 5
hop_s = 0.2
# Windows with fewer present samples than this fraction yield missing H.
min_valid = 0.5
# Interior missing runs up to this length are spline-imputed.
blink_max_s = 0.5
# Present samples gathered on each side of a gap for the spline.
spline_support = 8

[phases]
# Signature thresholds, relative to the session-global mean speed.
low_activity_frac = 0.25
high_activity_frac = 0.75
high_focus_min_fraction = 0.5
near_patient_min_fraction = 0.6
alternating_min_transitions = 2

[render]
width_px = 1200
height_px = 400
# Color maps: gray, amber, teal (dark = weak RSSI, bright = strong).
colormap = amber
entropy_track_px = 24
labels = true
)";
}

}  // namespace behavigram
