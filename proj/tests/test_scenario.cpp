#include <doctest.h>

#include <cmath>

#include "behavigram/errors.hpp"
#include "behavigram/pipeline.hpp"
#include "behavigram/scenario.hpp"
#include "behavigram/session_io.hpp"
#include "helpers.hpp"

using namespace behavigram;

TEST_CASE("generation is deterministic down to the output bytes") {
  const ScenarioSpec spec = two_regime_scenario(42);
  testutil::TempDir a("gen_a"), b("gen_b");
  write_scenario(generate(spec), a.path());
  write_scenario(generate(spec), b.path());
  for (const char* name : {"accel_rh.csv", "accel_lh.csv", "rssi_rh.csv", "rssi_lh.csv",
                           "gaze.csv", "markers.csv", "meta.json", "ground_truth.csv"}) {
    REQUIRE(testutil::read_file(a.path() / name) == testutil::read_file(b.path() / name));
  }
  // A different seed must actually change the data.
  ScenarioSpec other = spec;
  other.seed = 43;
  testutil::TempDir c("gen_c");
  write_scenario(generate(other), c.path());
  CHECK(testutil::read_file(a.path() / "gaze.csv") != testutil::read_file(c.path() / "gaze.csv"));
}

TEST_CASE("empty phase plan produces calibration segments only") {
  ScenarioSpec spec;
  spec.seed = 5;
  const GeneratedScenario g = generate(spec);
  CHECK(g.truth.phases.empty());
  REQUIRE(g.recording.markers.events.size() == 3);  // calib_near, calib_far, end
  CHECK(g.recording.markers.events[0].label == "calib_near");
  CHECK(g.recording.markers.events[1].label == "calib_far");
  CHECK(g.recording.accel_rh.sample_count() > 0);
}

TEST_CASE("nominal stream rates and gravity baseline") {
  const GeneratedScenario g = generate(two_regime_scenario(3));
  CHECK(g.recording.accel_rh.uniform_dt() == doctest::Approx(1.0 / 40.0));
  CHECK(g.recording.gaze.uniform_dt() == doctest::Approx(1.0 / 50.0));
  CHECK(g.recording.rssi_rh.uniform_dt() == doctest::Approx(1.0 / 10.0));

  // z-axis carries gravity (~1 g) while the sensor is otherwise still.
  double z_mean = 0.0;
  for (std::size_t i = 0; i < g.recording.accel_rh.sample_count(); ++i) {
    z_mean += g.recording.accel_rh.at(i, 2);
  }
  z_mean /= static_cast<double>(g.recording.accel_rh.sample_count());
  CHECK(z_mean == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("single quiet phase close to the patient is recovered by the pipeline") {
  // Zero target speed, fixation gaze, NearPatient for 30 s.
  ScenarioSpec spec;
  spec.seed = 11;
  BehaviorProfile p;
  p.proximity = ProximityState::NearPatient;
  spec.phases.push_back({"IIa", 30.0, p});

  const GeneratedScenario g = generate(spec);
  const AnalysisResult r = analyze(g.recording, PipelineConfig{});
  REQUIRE(r.summaries.size() == 1);
  CHECK(r.summaries[0].mean_speed_rh < 0.05);
  CHECK(r.summaries[0].mean_speed_lh < 0.05);
  CHECK(r.summaries[0].frac_near_patient >= 0.95);
  CHECK(r.summaries[0].low_entropy_fraction >= 0.9);
}

TEST_CASE("sync scenario offsets are recovered by estimate_lag") {
  const PipelineConfig cfg;
  for (const double offset : {0.0, 0.05, -0.1}) {
    const Recording rec = make_sync_scenario(offset, 21);
    const double lag = estimate_sync_lag(rec, cfg, 0.5);
    REQUIRE(std::abs(lag - offset) <= 0.02);
  }
}

TEST_CASE("ground-truth round trip on the four-phase plan") {
  const GeneratedScenario g = generate(abcde_scenario(123));
  const AnalysisResult r = analyze(g.recording, PipelineConfig{});
  REQUIRE(r.summaries.size() == g.truth.targets.size());

  for (std::size_t i = 0; i < r.summaries.size(); ++i) {
    const auto& est = r.summaries[i];
    const auto& target = g.truth.targets[i];
    INFO("phase ", est.label);
    REQUIRE(est.label == target.label);

    const auto check_speed = [&](double got, double want) {
      if (want > 0.0) {
        REQUIRE(std::abs(got - want) <= 0.2 * want);
      } else {
        REQUIRE(got <= 0.05);
      }
    };
    check_speed(est.mean_speed_rh, target.target_speed_rh_mps);
    check_speed(est.mean_speed_lh, target.target_speed_lh_mps);

    REQUIRE(std::abs(est.frac_near_patient - target.frac_near_patient) <= 0.1);
    REQUIRE(std::abs(est.frac_near_table - target.frac_near_table) <= 0.1);
    REQUIRE(std::abs(est.low_entropy_fraction - target.low_entropy_fraction) <= 0.1);
    REQUIRE(est.proximity_transitions >= target.min_proximity_transitions);
  }
  for (const auto& v : r.verdicts) {
    INFO("phase ", v.label, " detail: ", v.detail);
    REQUIRE(v.verdict == Verdict::Consistent);
  }
}

TEST_CASE("scenario spec validation") {
  ScenarioSpec bad;
  bad.phases.push_back({"", 10.0, {}});
  CHECK_THROWS_AS(generate(bad), Error);

  bad = ScenarioSpec{};
  bad.phases.push_back({"X", -1.0, {}});
  CHECK_THROWS_AS(generate(bad), Error);

  bad = ScenarioSpec{};
  BehaviorProfile p;
  p.blink_rate_hz = 2.0;
  p.blink_duration_s = 0.6;  // longer than the blink interval
  bad.phases.push_back({"X", 10.0, p});
  CHECK_THROWS_AS(generate(bad), Error);
}

TEST_CASE("json scenario parsing is strict") {
  const std::string good = R"({
    "seed": 9,
    "rssi_noise_std_db": 1.0,
    "lags": {"gaze": 0.05},
    "phases": [
      {"label": "I", "duration_s": 20,
       "profile": {"speed_rh_mps": 0.3, "proximity": "patient", "gaze": "fixation"}},
      {"label": "X", "duration_s": 10,
       "profile": {"proximity": "alternate? no", "gaze": "scatter"}}
    ]
  })";
  // The second phase has an invalid proximity name.
  CHECK_THROWS_AS(scenario_from_json(good), Error);

  const std::string ok = R"({
    "seed": 9,
    "phases": [
      {"label": "I", "duration_s": 20,
       "profile": {"speed_rh_mps": 0.3, "alternate_period_s": 5, "gaze": "scatter"}}
    ]
  })";
  const ScenarioSpec spec = scenario_from_json(ok);
  CHECK(spec.seed == 9);
  REQUIRE(spec.phases.size() == 1);
  CHECK(spec.phases[0].profile.target_speed_rh_mps == 0.3);
  CHECK(spec.phases[0].profile.proximity_alternate_period_s == 5.0);
  CHECK(spec.phases[0].profile.gaze_regime == GazeRegime::UniformScatter);

  try {
    scenario_from_json(R"({"sed": 1})");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigError);
    CHECK(std::string(e.what()).find("sed") != std::string::npos);
  }
}
