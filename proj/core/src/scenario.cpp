#include "behavigram/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"
#include "behavigram/kinematics.hpp"
#include "behavigram/rng.hpp"
#include "behavigram/savgol.hpp"
#include "behavigram/session_io.hpp"

namespace behavigram {

namespace {

constexpr double kAccelRateHz = 40.0;
constexpr double kGazeRateHz = 50.0;
constexpr double kRssiRateHz = 10.0;
constexpr double kBurstPeriodS = 1.0;
constexpr double kBurstLenS = 0.5;
constexpr double kVelocityHalfLifeS = 0.5;

struct Segment {
  std::string marker;  // calib_near / calib_far / phase:<label>
  std::string label;   // phase label, empty for calibration
  double t0{0.0};
  double t1{0.0};
  BehaviorProfile profile;
  bool is_phase{false};
};

std::vector<Segment> build_segments(const ScenarioSpec& spec) {
  std::vector<Segment> segs;
  BehaviorProfile calib;  // stationary, explorative gaze for entropy contrast
  calib.gaze_regime = GazeRegime::UniformScatter;

  double t = 0.0;
  calib.proximity = ProximityState::NearPatient;
  segs.push_back({"calib_near", "", t, t + spec.calib_segment_s, calib, false});
  t += spec.calib_segment_s;
  calib.proximity = ProximityState::NearTable;
  segs.push_back({"calib_far", "", t, t + spec.calib_segment_s, calib, false});
  t += spec.calib_segment_s;

  for (const auto& entry : spec.phases) {
    segs.push_back({"phase:" + entry.label, entry.label, t, t + entry.duration_s, entry.profile,
                    true});
    t += entry.duration_s;
  }
  return segs;
}

const Segment& segment_at(const std::vector<Segment>& segs, double t) {
  for (const auto& s : segs) {
    if (t >= s.t0 && t < s.t1) return s;
  }
  return t < segs.front().t0 ? segs.front() : segs.back();
}

ProximityState schedule_state(const Segment& seg, double t) {
  const auto& p = seg.profile;
  if (seg.is_phase && p.proximity_alternate_period_s > 0.0) {
    const long dwell = static_cast<long>(std::floor((t - seg.t0) / p.proximity_alternate_period_s));
    return dwell % 2 == 0 ? ProximityState::NearPatient : ProximityState::NearTable;
  }
  return p.proximity;
}

// Unit-amplitude bipolar acceleration pulse (one full sine cycle): the
// integral is zero, so each burst is a move-and-stop gesture whose velocity
// profile is a raised cosine. No net velocity change and no DC content for
// the gravity baseline remover to eat.
double burst_pulse(double t_in_burst) {
  if (t_in_burst < 0.0 || t_in_burst >= kBurstLenS) return 0.0;
  return std::sin(2.0 * std::numbers::pi * t_in_burst / kBurstLenS);
}

struct BurstSlot {
  double start;
  int axis;
};

// Burst schedule for one hand inside one phase. When both hands are active
// the slots alternate between hands, giving the alternating-hand texture.
// Pulses are centered in their slots to stay clear of segment edges.
std::vector<BurstSlot> burst_slots(const Segment& seg, bool right_hand) {
  const auto& p = seg.profile;
  const double target = right_hand ? p.target_speed_rh_mps : p.target_speed_lh_mps;
  if (!(target > 0.0)) return {};
  const bool both = p.target_speed_rh_mps > 0.0 && p.target_speed_lh_mps > 0.0;

  std::vector<BurstSlot> slots;
  int slot_index = 0;
  const double lead_in = (kBurstPeriodS - kBurstLenS) / 2.0;
  for (double slot_start = seg.t0; slot_start + kBurstPeriodS <= seg.t1 + 1e-9;
       slot_start += kBurstPeriodS) {
    const bool mine = !both || (slot_index % 2 == (right_hand ? 0 : 1));
    if (mine) slots.push_back({slot_start + lead_in, slot_index % 3});
    ++slot_index;
  }
  return slots;
}

// Mean speed the velocity estimation chain (denoising, baseline removal,
// leaky integration, all at their defaults) recovers from a unit-amplitude
// burst train over the segment; burst amplitudes are target / this. Targets
// are therefore defined in the estimator's own units.
double unit_train_mean_speed(const Segment& seg, const std::vector<BurstSlot>& slots) {
  const std::size_t n =
      static_cast<std::size_t>(std::llround((seg.t1 - seg.t0) * kAccelRateHz)) + 1;
  TimeSeries train = TimeSeries::on_grid("unit", {"x", "y", "z"}, seg.t0, kAccelRateHz, n);
  std::fill(train.values.begin(), train.values.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = train.timestamps[i];
    for (const auto& slot : slots) {
      const double v = burst_pulse(t - slot.start);
      if (v != 0.0) train.at(i, static_cast<std::size_t>(slot.axis)) += v;
    }
  }
  const SavGolSpec denoise{};
  if (n >= static_cast<std::size_t>(denoise.window_len)) {
    train = savgol_filter(train, denoise);
  }
  train = remove_gravity(train, {});
  const double leak = leak_for_half_life(kVelocityHalfLifeS, kAccelRateHz);
  const TimeSeries speed = velocity_magnitude(train, leak);
  double sum = 0.0;
  for (double v : speed.values) sum += v;
  return sum / static_cast<double>(n);
}

TimeSeries generate_accel(const ScenarioSpec& spec, const std::vector<Segment>& segs,
                          double total_s, bool right_hand, double lag_s) {
  const std::string id = right_hand ? "accel_rh" : "accel_lh";
  const std::size_t n = static_cast<std::size_t>(std::llround(total_s * kAccelRateHz)) + 1;
  TimeSeries out = TimeSeries::on_grid(id, {"acc_x", "acc_y", "acc_z"}, 0.0, kAccelRateHz, n);

  // Bursts in g on the plan timeline, amplitudes calibrated per phase
  // against the forward model of the velocity estimator.
  std::vector<double> burst_g_x(n, 0.0), burst_g_y(n, 0.0), burst_g_z(n, 0.0);
  for (const auto& seg : segs) {
    if (!seg.is_phase) continue;
    const auto slots = burst_slots(seg, right_hand);
    if (slots.empty()) continue;
    const double unit_mean = unit_train_mean_speed(seg, slots);
    if (!(unit_mean > 0.0)) continue;
    const double target =
        right_hand ? seg.profile.target_speed_rh_mps : seg.profile.target_speed_lh_mps;
    const double amplitude_g = target / unit_mean;
    for (const auto& slot : slots) {
      const std::size_t i0 = static_cast<std::size_t>(
          std::max(0.0, std::ceil((slot.start - 1e-9) * kAccelRateHz)));
      for (std::size_t i = i0; i < n; ++i) {
        const double t = out.timestamps[i];
        const double v = burst_pulse(t - slot.start);
        if (t > slot.start + kBurstLenS) break;
        double* axis = slot.axis == 0 ? burst_g_x.data()
                                      : (slot.axis == 1 ? burst_g_y.data()
                                                        : burst_g_z.data());
        axis[i] += amplitude_g * v;
      }
    }
  }

  CounterRng rng(spec.seed, id);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = out.timestamps[i];
    const double tc = std::clamp(t - lag_s, 0.0, total_s);  // content timeline
    const std::size_t ic = std::min(
        static_cast<std::size_t>(std::llround(tc * kAccelRateHz)), n - 1);
    // Gravity on z plus a slow tilt on x; the baseline remover takes both out.
    const double tilt = 0.02 * std::sin(2.0 * std::numbers::pi * 0.03 * tc);
    out.at(i, 0) = tilt + burst_g_x[ic] + rng.gaussian(0.0, spec.accel_noise_std_g);
    out.at(i, 1) = burst_g_y[ic] + rng.gaussian(0.0, spec.accel_noise_std_g);
    out.at(i, 2) = 1.0 + burst_g_z[ic] + rng.gaussian(0.0, spec.accel_noise_std_g);
  }
  return out;
}

TimeSeries generate_rssi(const ScenarioSpec& spec, const std::vector<Segment>& segs,
                         double total_s, bool right_hand, double lag_s) {
  const std::string id = right_hand ? "rssi_rh" : "rssi_lh";
  const std::size_t n = static_cast<std::size_t>(std::llround(total_s * kRssiRateHz)) + 1;
  TimeSeries out = TimeSeries::on_grid(id, {"rssi"}, 0.0, kRssiRateHz, n);
  out.nominal_rate_hz = kRssiRateHz;

  CounterRng rng(spec.seed, id);
  const double mid = (spec.rssi_near_dbm + spec.rssi_far_dbm) / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tc = std::clamp(out.timestamps[i] - lag_s, 0.0, total_s);
    const Segment& seg = segment_at(segs, tc);
    double level;
    switch (schedule_state(seg, tc)) {
      case ProximityState::NearPatient: level = spec.rssi_near_dbm; break;
      case ProximityState::NearTable: level = spec.rssi_far_dbm; break;
      default: level = mid; break;
    }
    out.values[i] = level + rng.gaussian(0.0, spec.rssi_noise_std_db);
  }
  return out;
}

TimeSeries generate_gaze(const ScenarioSpec& spec, const std::vector<Segment>& segs,
                         double total_s, double lag_s) {
  const std::size_t n = static_cast<std::size_t>(std::llround(total_s * kGazeRateHz)) + 1;
  TimeSeries out = TimeSeries::on_grid("gaze", {"gaze_x", "gaze_y"}, 0.0, kGazeRateHz, n);

  // Per-segment fixation centers, jittered just enough to move between
  // phases without separating the clusters.
  CounterRng center_rng(spec.seed, "gaze_centers");
  std::vector<std::pair<double, double>> centers;
  for (const auto& seg : segs) {
    centers.emplace_back(seg.profile.fixation_center_x + center_rng.uniform(-0.005, 0.005),
                         seg.profile.fixation_center_y + center_rng.uniform(-0.005, 0.005));
  }

  // Blink schedule: exponential gaps per segment at the profile's rate.
  std::vector<std::pair<double, double>> blinks;
  CounterRng blink_rng(spec.seed, "gaze_blinks");
  for (const auto& seg : segs) {
    const double rate = seg.profile.blink_rate_hz;
    const double dur = seg.profile.blink_duration_s;
    if (!(rate > 0.0) || !(dur > 0.0)) continue;
    double t = seg.t0;
    while (true) {
      const double gap = -std::log(1.0 - blink_rng.uniform()) / rate;
      t += std::max(gap, dur + 0.1);
      if (t + dur >= seg.t1) break;
      blinks.emplace_back(t, t + dur);
    }
  }
  const auto in_blink = [&](double t) {
    for (const auto& [a, b] : blinks) {
      if (t >= a && t < b) return true;
    }
    return false;
  };

  CounterRng rng(spec.seed, "gaze");
  for (std::size_t i = 0; i < n; ++i) {
    const double tc = std::clamp(out.timestamps[i] - lag_s, 0.0, total_s);
    if (in_blink(tc)) {
      // Two RNG draws are consumed either way so blink placement does not
      // shift the remaining samples.
      rng.uniform();
      rng.uniform();
      out.at(i, 0) = kMissing;
      out.at(i, 1) = kMissing;
      continue;
    }
    const Segment& seg = segment_at(segs, tc);
    const std::size_t seg_idx = static_cast<std::size_t>(&seg - segs.data());
    if (seg.profile.gaze_regime == GazeRegime::UniformScatter) {
      out.at(i, 0) = rng.uniform();
      out.at(i, 1) = rng.uniform();
    } else {
      double std_now = seg.profile.fixation_std;
      if (seg.profile.fixation_std_end >= 0.0 && seg.t1 > seg.t0) {
        const double u = (tc - seg.t0) / (seg.t1 - seg.t0);
        std_now += (seg.profile.fixation_std_end - std_now) * u;
      }
      out.at(i, 0) = std::clamp(rng.gaussian(centers[seg_idx].first, std_now), 0.0, 1.0);
      out.at(i, 1) = std::clamp(rng.gaussian(centers[seg_idx].second, std_now), 0.0, 1.0);
    }
  }
  return out;
}

PhaseTarget make_target(const Segment& seg) {
  PhaseTarget t;
  t.label = seg.label;
  t.t_start = seg.t0;
  t.t_end = seg.t1;
  t.target_speed_rh_mps = seg.profile.target_speed_rh_mps;
  t.target_speed_lh_mps = seg.profile.target_speed_lh_mps;
  // Fixation phases sit almost fully under the mean-entropy threshold; the
  // 0.95 target leaves room for windows straddling regime boundaries.
  t.low_entropy_fraction = seg.profile.gaze_regime == GazeRegime::Fixation ? 0.95 : 0.0;

  // Integrate the proximity schedule at the analysis rate.
  const std::size_t n = static_cast<std::size_t>(std::llround((seg.t1 - seg.t0) * kAccelRateHz));
  long n_patient = 0, n_table = 0, n_mid = 0;
  int transitions = 0;
  ProximityState prev = ProximityState::Intermediate;
  for (std::size_t i = 0; i < n; ++i) {
    const double t_abs = seg.t0 + static_cast<double>(i) / kAccelRateHz;
    const ProximityState s = schedule_state(seg, t_abs);
    switch (s) {
      case ProximityState::NearPatient: ++n_patient; break;
      case ProximityState::NearTable: ++n_table; break;
      case ProximityState::Intermediate: ++n_mid; break;
    }
    if (i > 0 && s != prev) ++transitions;
    prev = s;
  }
  const double total = static_cast<double>(n_patient + n_table + n_mid);
  if (total > 0) {
    t.frac_near_patient = static_cast<double>(n_patient) / total;
    t.frac_near_table = static_cast<double>(n_table) / total;
    t.frac_intermediate = static_cast<double>(n_mid) / total;
  }
  t.min_proximity_transitions = transitions;
  return t;
}

}  // namespace

void ScenarioSpec::validate() const {
  if (!(calib_segment_s > 0.0)) fail(Errc::InvalidSpec, "calib_segment_s must be positive");
  if (!(rssi_near_dbm > rssi_far_dbm)) {
    fail(Errc::InvalidSpec, "rssi_near_dbm must exceed rssi_far_dbm");
  }
  if (rssi_noise_std_db < 0.0 || accel_noise_std_g < 0.0) {
    fail(Errc::InvalidSpec, "noise levels must be non-negative");
  }
  for (const auto& p : phases) {
    if (p.label.empty()) fail(Errc::InvalidSpec, "phase label must not be empty");
    if (!(p.duration_s > 0.0)) {
      fail(Errc::InvalidSpec, "phase '" + p.label + "' duration must be positive");
    }
    if (p.profile.fixation_std < 0.0) {
      fail(Errc::InvalidSpec, "phase '" + p.label + "' fixation std must be >= 0");
    }
    if (p.profile.target_speed_rh_mps < 0.0 || p.profile.target_speed_lh_mps < 0.0) {
      fail(Errc::InvalidSpec, "phase '" + p.label + "' target speeds must be >= 0");
    }
    if (p.profile.blink_rate_hz > 0.0 &&
        !(p.profile.blink_duration_s < 1.0 / p.profile.blink_rate_hz)) {
      fail(Errc::InvalidSpec,
           "phase '" + p.label + "' blink duration must be below the blink interval");
    }
  }
}

GeneratedScenario generate(const ScenarioSpec& spec) {
  spec.validate();
  const auto segs = build_segments(spec);
  const double total_s = segs.back().t1;

  GeneratedScenario out;
  out.recording.accel_rh =
      generate_accel(spec, segs, total_s, true, spec.injected_lags.accel_rh);
  out.recording.accel_lh =
      generate_accel(spec, segs, total_s, false, spec.injected_lags.accel_lh);
  out.recording.rssi_rh = generate_rssi(spec, segs, total_s, true, spec.injected_lags.rssi_rh);
  out.recording.rssi_lh = generate_rssi(spec, segs, total_s, false, spec.injected_lags.rssi_lh);
  out.recording.gaze = generate_gaze(spec, segs, total_s, spec.injected_lags.gaze);

  for (const auto& seg : segs) {
    out.recording.markers.events.push_back({seg.t0, seg.marker});
  }
  out.recording.markers.events.push_back({total_s, "end"});

  out.recording.meta["subject"] = "synthetic";
  out.recording.meta["session"] = "generated";
  out.recording.meta["seed"] = std::to_string(spec.seed);

  for (const auto& seg : segs) {
    if (!seg.is_phase) continue;
    out.truth.phases.push_back({seg.label, seg.t0, seg.t1});
    out.truth.targets.push_back(make_target(seg));
  }
  out.truth.injected_lags = spec.injected_lags;
  return out;
}

Recording make_sync_scenario(double offset_s, std::uint64_t seed) {
  constexpr double kTotal = 14.0;
  constexpr double kSweepStart = 1.0;
  constexpr double kSweepEnd = 13.0;
  constexpr double kSweepHz = 0.25;

  Recording rec;
  const auto sweep = [&](double t) {
    if (t < kSweepStart || t > kSweepEnd) return 0.0;
    return std::sin(2.0 * std::numbers::pi * kSweepHz * (t - kSweepStart));
  };

  {
    const std::size_t n = static_cast<std::size_t>(std::llround(kTotal * kAccelRateHz)) + 1;
    rec.accel_rh = TimeSeries::on_grid("accel_rh", {"acc_x", "acc_y", "acc_z"}, 0.0,
                                       kAccelRateHz, n);
    rec.accel_lh = TimeSeries::on_grid("accel_lh", {"acc_x", "acc_y", "acc_z"}, 0.0,
                                       kAccelRateHz, n);
    CounterRng rng_rh(seed, "accel_rh");
    CounterRng rng_lh(seed, "accel_lh");
    for (std::size_t i = 0; i < n; ++i) {
      const double t = rec.accel_rh.timestamps[i];
      rec.accel_rh.at(i, 0) = 0.15 * sweep(t) + rng_rh.gaussian(0.0, 0.003);
      rec.accel_rh.at(i, 1) = rng_rh.gaussian(0.0, 0.003);
      rec.accel_rh.at(i, 2) = 1.0 + rng_rh.gaussian(0.0, 0.003);
      rec.accel_lh.at(i, 0) = rng_lh.gaussian(0.0, 0.003);
      rec.accel_lh.at(i, 1) = rng_lh.gaussian(0.0, 0.003);
      rec.accel_lh.at(i, 2) = 1.0 + rng_lh.gaussian(0.0, 0.003);
    }
  }
  {
    const std::size_t n = static_cast<std::size_t>(std::llround(kTotal * kGazeRateHz)) + 1;
    rec.gaze = TimeSeries::on_grid("gaze", {"gaze_x", "gaze_y"}, 0.0, kGazeRateHz, n);
    CounterRng rng(seed, "gaze");
    for (std::size_t i = 0; i < n; ++i) {
      const double t = rec.gaze.timestamps[i];
      rec.gaze.at(i, 0) = std::clamp(0.5 + rng.gaussian(0.0, 0.004), 0.0, 1.0);
      rec.gaze.at(i, 1) =
          std::clamp(0.5 + 0.3 * sweep(t - offset_s) + rng.gaussian(0.0, 0.004), 0.0, 1.0);
    }
  }
  {
    const std::size_t n = static_cast<std::size_t>(std::llround(kTotal * kRssiRateHz)) + 1;
    rec.rssi_rh = TimeSeries::on_grid("rssi_rh", {"rssi"}, 0.0, kRssiRateHz, n);
    rec.rssi_lh = TimeSeries::on_grid("rssi_lh", {"rssi"}, 0.0, kRssiRateHz, n);
    CounterRng rng_rh(seed, "rssi_rh");
    CounterRng rng_lh(seed, "rssi_lh");
    for (std::size_t i = 0; i < n; ++i) {
      rec.rssi_rh.values[i] = -50.0 + rng_rh.gaussian(0.0, 1.5);
      rec.rssi_lh.values[i] = -50.0 + rng_lh.gaussian(0.0, 1.5);
    }
  }
  rec.markers.events = {{kSweepStart, "sync"}, {kSweepEnd, "sync_end"}, {kTotal, "end"}};
  rec.meta["subject"] = "synthetic";
  rec.meta["session"] = "sync";
  rec.meta["seed"] = std::to_string(seed);
  rec.meta["truth.lag_gaze_s"] = csv::format_number(offset_s);
  return rec;
}

void write_scenario(const GeneratedScenario& scenario, const std::filesystem::path& out_dir) {
  Recording rec = scenario.recording;
  rec.meta["truth.lag_accel_rh_s"] = csv::format_number(scenario.truth.injected_lags.accel_rh);
  rec.meta["truth.lag_accel_lh_s"] = csv::format_number(scenario.truth.injected_lags.accel_lh);
  rec.meta["truth.lag_rssi_rh_s"] = csv::format_number(scenario.truth.injected_lags.rssi_rh);
  rec.meta["truth.lag_rssi_lh_s"] = csv::format_number(scenario.truth.injected_lags.rssi_lh);
  rec.meta["truth.lag_gaze_s"] = csv::format_number(scenario.truth.injected_lags.gaze);
  save_recording(rec, out_dir);

  std::ofstream out(out_dir / "ground_truth.csv");
  if (!out) fail(Errc::MissingFile, "cannot write ground_truth.csv");
  out << "label,t_start,t_end,target_speed_rh_mps,target_speed_lh_mps,frac_near_patient,"
         "frac_near_table,frac_intermediate,low_entropy_fraction,min_proximity_transitions\n";
  for (const auto& t : scenario.truth.targets) {
    out << t.label << ',' << csv::format_number(t.t_start) << ',' << csv::format_number(t.t_end)
        << ',' << csv::format_number(t.target_speed_rh_mps) << ','
        << csv::format_number(t.target_speed_lh_mps) << ','
        << csv::format_number(t.frac_near_patient) << ','
        << csv::format_number(t.frac_near_table) << ','
        << csv::format_number(t.frac_intermediate) << ','
        << csv::format_number(t.low_entropy_fraction) << ',' << t.min_proximity_transitions
        << '\n';
  }
}

ScenarioSpec abcde_scenario(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.seed = seed;

  BehaviorProfile p;

  // Phase I: instrument setup beside the patient, sustained hand movements,
  // focused gaze.
  p = {};
  p.target_speed_rh_mps = 0.32;
  p.target_speed_lh_mps = 0.28;
  p.proximity = ProximityState::NearPatient;
  spec.phases.push_back({"I", 40.0, p});

  // Phase IIa: visual observation only.
  p = {};
  p.proximity = ProximityState::NearPatient;
  spec.phases.push_back({"IIa", 30.0, p});

  // Phase IIb: stethoscope use, moderate hand movement.
  p = {};
  p.target_speed_rh_mps = 0.07;
  p.target_speed_lh_mps = 0.06;
  p.proximity = ProximityState::NearPatient;
  spec.phases.push_back({"IIb", 30.0, p});

  // Phase III: fetching instruments, proximity alternates, active hands,
  // coherent gaze.
  p = {};
  p.target_speed_rh_mps = 0.22;
  p.target_speed_lh_mps = 0.20;
  p.proximity_alternate_period_s = 7.5;
  spec.phases.push_back({"III", 45.0, p});

  // Phase IV: checklist review, proximity changes with only brief movements.
  p = {};
  p.target_speed_rh_mps = 0.03;
  p.target_speed_lh_mps = 0.03;
  p.proximity_alternate_period_s = 10.0;
  spec.phases.push_back({"IV", 35.0, p});
  return spec;
}

ScenarioSpec two_regime_scenario(std::uint64_t seed, bool graded_dispersion) {
  ScenarioSpec spec;
  spec.seed = seed;

  BehaviorProfile focus;
  focus.proximity = ProximityState::NearPatient;
  if (graded_dispersion) {
    focus.fixation_std = 0.008;
    focus.fixation_std_end = 0.03;
    focus.fixation_center_x = 0.55;
    focus.fixation_center_y = 0.55;
    spec.phases.push_back({"focus", 60.0, focus});
  } else {
    focus.fixation_std = 0.01;
    spec.phases.push_back({"focus", 30.0, focus});
  }

  BehaviorProfile scatter;
  scatter.proximity = ProximityState::NearPatient;
  scatter.gaze_regime = GazeRegime::UniformScatter;
  spec.phases.push_back({"scatter", graded_dispersion ? 15.0 : 30.0, scatter});
  return spec;
}

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(Errc::ConfigError, "unknown key '" + key + "' in " + where);
    }
  }
}

BehaviorProfile profile_from_json(const json& j, const std::string& where) {
  check_keys(j,
             {"speed_rh_mps", "speed_lh_mps", "proximity", "alternate_period_s", "gaze",
              "fixation_std", "fixation_std_end", "fixation_center_x", "fixation_center_y",
              "blink_rate_hz", "blink_duration_s"},
             where);
  BehaviorProfile p;
  p.target_speed_rh_mps = j.value("speed_rh_mps", 0.0);
  p.target_speed_lh_mps = j.value("speed_lh_mps", 0.0);
  if (j.contains("proximity")) {
    const std::string s = j["proximity"].get<std::string>();
    if (s == "patient") {
      p.proximity = ProximityState::NearPatient;
    } else if (s == "table") {
      p.proximity = ProximityState::NearTable;
    } else if (s == "intermediate") {
      p.proximity = ProximityState::Intermediate;
    } else {
      fail(Errc::ConfigError, where + ": unknown proximity '" + s + "'");
    }
  }
  p.proximity_alternate_period_s = j.value("alternate_period_s", 0.0);
  if (j.contains("gaze")) {
    const std::string s = j["gaze"].get<std::string>();
    if (s == "fixation") {
      p.gaze_regime = GazeRegime::Fixation;
    } else if (s == "scatter") {
      p.gaze_regime = GazeRegime::UniformScatter;
    } else {
      fail(Errc::ConfigError, where + ": unknown gaze regime '" + s + "'");
    }
  }
  p.fixation_std = j.value("fixation_std", p.fixation_std);
  p.fixation_std_end = j.value("fixation_std_end", p.fixation_std_end);
  p.fixation_center_x = j.value("fixation_center_x", p.fixation_center_x);
  p.fixation_center_y = j.value("fixation_center_y", p.fixation_center_y);
  p.blink_rate_hz = j.value("blink_rate_hz", p.blink_rate_hz);
  p.blink_duration_s = j.value("blink_duration_s", p.blink_duration_s);
  return p;
}

}  // namespace

ScenarioSpec scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::ConfigError, std::string("scenario spec: ") + e.what());
  }
  if (!j.is_object()) fail(Errc::ConfigError, "scenario spec must be a JSON object");
  check_keys(j,
             {"seed", "phases", "lags", "rssi_noise_std_db", "rssi_near_dbm", "rssi_far_dbm",
              "accel_noise_std_g", "calib_segment_s"},
             "scenario spec");

  ScenarioSpec spec;
  spec.seed = j.value("seed", 1ULL);
  spec.rssi_noise_std_db = j.value("rssi_noise_std_db", spec.rssi_noise_std_db);
  spec.rssi_near_dbm = j.value("rssi_near_dbm", spec.rssi_near_dbm);
  spec.rssi_far_dbm = j.value("rssi_far_dbm", spec.rssi_far_dbm);
  spec.accel_noise_std_g = j.value("accel_noise_std_g", spec.accel_noise_std_g);
  spec.calib_segment_s = j.value("calib_segment_s", spec.calib_segment_s);

  if (j.contains("lags")) {
    const auto& lags = j["lags"];
    check_keys(lags, {"accel_rh", "accel_lh", "rssi_rh", "rssi_lh", "gaze"}, "lags");
    spec.injected_lags.accel_rh = lags.value("accel_rh", 0.0);
    spec.injected_lags.accel_lh = lags.value("accel_lh", 0.0);
    spec.injected_lags.rssi_rh = lags.value("rssi_rh", 0.0);
    spec.injected_lags.rssi_lh = lags.value("rssi_lh", 0.0);
    spec.injected_lags.gaze = lags.value("gaze", 0.0);
  }
  if (j.contains("phases")) {
    if (!j["phases"].is_array()) fail(Errc::ConfigError, "'phases' must be an array");
    for (const auto& pj : j["phases"]) {
      check_keys(pj, {"label", "duration_s", "profile"}, "phase entry");
      if (!pj.contains("label") || !pj.contains("duration_s")) {
        fail(Errc::ConfigError, "phase entries need 'label' and 'duration_s'");
      }
      PhasePlanEntry entry;
      entry.label = pj["label"].get<std::string>();
      entry.duration_s = pj["duration_s"].get<double>();
      if (pj.contains("profile")) {
        entry.profile = profile_from_json(pj["profile"], "phase '" + entry.label + "'");
      }
      spec.phases.push_back(std::move(entry));
    }
  }
  spec.validate();
  return spec;
}

ScenarioSpec scenario_from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::MissingFile, "missing scenario spec: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return scenario_from_json(text);
}

}  // namespace behavigram
