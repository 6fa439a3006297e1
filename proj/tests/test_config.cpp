#include <doctest.h>

#include <sstream>

#include "behavigram/config.hpp"
#include "behavigram/errors.hpp"
#include "helpers.hpp"

using namespace behavigram;

TEST_CASE("defaults validate and match the documented values") {
  PipelineConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.signal.savgol_window == 11);
  CHECK(cfg.signal.savgol_poly_order == 3);
  CHECK(cfg.gaze.bins_per_axis == 100);
  CHECK(cfg.gaze.window_s == 5.0);
  CHECK(cfg.proximity.margin_db == 3.0);
  CHECK(cfg.streams.resample_max_gap_s == 0.2);
}

TEST_CASE("the emitted default config parses back to the defaults") {
  std::ostringstream out;
  write_default_config(out);
  const PipelineConfig cfg = parse_config(out.str());
  const PipelineConfig defaults;
  CHECK(cfg.signal.savgol_window == defaults.signal.savgol_window);
  CHECK(cfg.signal.velocity_half_life_s == defaults.signal.velocity_half_life_s);
  CHECK(cfg.gaze.hop_s == defaults.gaze.hop_s);
  CHECK(cfg.phases.low_activity_frac == defaults.phases.low_activity_frac);
  CHECK(cfg.render.colormap == defaults.render.colormap);
  CHECK(cfg.render.labels == defaults.render.labels);
}

TEST_CASE("overrides apply per section") {
  const PipelineConfig cfg = parse_config(
      "[signal]\n"
      "savgol_window = 21\n"
      "[gaze]\n"
      "bins_per_axis = 50\n"
      "# comment line\n"
      "window_s = 2\n");
  CHECK(cfg.signal.savgol_window == 21);
  CHECK(cfg.gaze.bins_per_axis == 50);
  CHECK(cfg.gaze.window_s == 2.0);
  CHECK(cfg.streams.common_rate_hz == 40.0);  // untouched default
}

TEST_CASE("unknown keys and sections are errors") {
  try {
    parse_config("[gaze]\nbins = 50\n");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigError);
    CHECK(std::string(e.what()).find("bins") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("[nope]\nx = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("key_without_section = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("[gaze]\nwindow_s = abc\n"), Error);
}

TEST_CASE("invalid combinations are rejected by validate") {
  CHECK_THROWS_AS(parse_config("[signal]\nsavgol_window = 4\n"), Error);
  CHECK_THROWS_AS(parse_config("[gaze]\nhop_s = 9\n"), Error);  // hop > window
  CHECK_THROWS_AS(parse_config("[proximity]\nmargin_db = 0\n"), Error);
}

TEST_CASE("missing config file is reported") {
  try {
    load_config("/nonexistent/pipeline.ini");
    FAIL("expected MissingFile");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingFile);
  }
}
