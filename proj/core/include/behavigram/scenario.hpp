#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "behavigram/lag.hpp"
#include "behavigram/phases.hpp"
#include "behavigram/proximity.hpp"
#include "behavigram/time_series.hpp"

namespace behavigram {

enum class GazeRegime { Fixation, UniformScatter };

// Behavior of one planned phase. Target speeds are what the velocity
// pipeline should recover; movement bursts are scaled against a forward
// model of the leaky integrator to realize them.
struct BehaviorProfile {
  double target_speed_rh_mps{0.0};
  double target_speed_lh_mps{0.0};
  ProximityState proximity{ProximityState::NearPatient};
  // > 0 toggles NearPatient/NearTable with this dwell time (alternating
  // proximity phases); the fixed state above is ignored then.
  double proximity_alternate_period_s{0.0};
  GazeRegime gaze_regime{GazeRegime::Fixation};
  double fixation_std{0.006};      // gaze units
  // < 0 keeps the dispersion constant; otherwise the std ramps linearly to
  // this value across the phase (drifting attentional focus).
  double fixation_std_end{-1.0};
  double fixation_center_x{0.5};
  double fixation_center_y{0.5};
  double blink_rate_hz{0.25};
  double blink_duration_s{0.15};
};

struct PhasePlanEntry {
  std::string label;
  double duration_s{0.0};
  BehaviorProfile profile;
};

struct ScenarioSpec {
  std::uint64_t seed{1};
  std::vector<PhasePlanEntry> phases;
  // Content lags injected into the generated streams; positive means the
  // stream trails the plan timeline.
  StreamLags injected_lags;
  double rssi_noise_std_db{1.5};
  double rssi_near_dbm{-50.0};
  double rssi_far_dbm{-85.0};
  double accel_noise_std_g{0.004};
  double calib_segment_s{6.0};  // one near + one far segment precede the phases

  void validate() const;  // throws InvalidSpec
};

// Per-phase generation targets; the pipeline estimate must land within the
// documented tolerances (speeds +-20% relative, fractions +-0.1).
struct PhaseTarget {
  std::string label;
  double t_start{0.0};
  double t_end{0.0};
  double target_speed_rh_mps{0.0};
  double target_speed_lh_mps{0.0};
  double frac_near_patient{0.0};
  double frac_near_table{0.0};
  double frac_intermediate{0.0};
  double low_entropy_fraction{0.0};
  int min_proximity_transitions{0};
};

struct GroundTruth {
  std::vector<PhaseAnnotation> phases;
  std::vector<PhaseTarget> targets;
  StreamLags injected_lags;
};

struct GeneratedScenario {
  Recording recording;
  GroundTruth truth;
};

// Deterministic: identical spec (seed included) generates identical streams.
// Streams come out at their nominal rates (accel 40 Hz, gaze 50 Hz, RSSI
// 10 Hz) with a gravity baseline, calibration segments marked calib_near /
// calib_far, and phase:<label> markers. Throws InvalidSpec.
GeneratedScenario generate(const ScenarioSpec& spec);

// Sync-verification recording: a slow sinusoidal sweep driving acc_x and
// gaze_y with the given offset injected on gaze (positive = gaze trails),
// marked by a `sync` segment.
Recording make_sync_scenario(double offset_s, std::uint64_t seed);

// Session directory in the standard layout plus ground_truth.csv; injected
// lags land in meta.json under truth.* keys.
void write_scenario(const GeneratedScenario& scenario, const std::filesystem::path& out_dir);

// Four-phase plan following the documented phase signatures end to end.
ScenarioSpec abcde_scenario(std::uint64_t seed = 1);

// Fixation regime followed by a uniform-scatter regime. With
// graded_dispersion the fixation std ramps across the regime, giving the
// entropy series rank structure beyond the two flat levels; the robustness
// sweep needs that texture for its cross-setting rank correlations.
ScenarioSpec two_regime_scenario(std::uint64_t seed = 1, bool graded_dispersion = false);

// Strict JSON scenario description (unknown keys are errors).
ScenarioSpec scenario_from_json_file(const std::filesystem::path& path);
ScenarioSpec scenario_from_json(const std::string& text);

}  // namespace behavigram
