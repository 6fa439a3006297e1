// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Exit code 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "behavigram/config.hpp"
#include "behavigram/errors.hpp"
#include "behavigram/gaze_entropy.hpp"
#include "behavigram/kinematics.hpp"
#include "behavigram/lag.hpp"
#include "behavigram/pipeline.hpp"
#include "behavigram/proximity.hpp"
#include "behavigram/render.hpp"
#include "behavigram/rng.hpp"
#include "behavigram/savgol.hpp"
#include "behavigram/scenario.hpp"
#include "behavigram/session_io.hpp"
#include "behavigram/svg.hpp"
#include "behavigram/time_series.hpp"

using namespace behavigram;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok{true};
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

double dense_histogram_entropy(const std::vector<std::pair<int, int>>& bins, int B) {
  std::vector<long> hist(static_cast<std::size_t>(B) * B, 0);
  for (const auto& [i, j] : bins) hist[static_cast<std::size_t>(i) * B + j]++;
  const double n = static_cast<double>(bins.size());
  double h = 0.0;
  for (long c : hist) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h += p * std::log2(1.0 / p);
  }
  return h;
}

// --- criterion 1: sliding-window entropy equals the brute-force oracle ----

Check criterion_entropy_oracle() {
  Check c;
  CounterRng rng(1001, "acceptance_entropy");
  for (int trial = 0; trial < 1000; ++trial) {
    const int B = 2 + static_cast<int>(rng.uniform() * 24.0);
    const int n = 1 + static_cast<int>(rng.uniform() * 500.0);
    std::vector<std::pair<int, int>> bins;
    bins.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      bins.emplace_back(static_cast<int>(rng.uniform() * B),
                        static_cast<int>(rng.uniform() * B));
    }
    const double h = joint_entropy_bits(bins);
    const double oracle = dense_histogram_entropy(bins, B);
    c.require(std::abs(h - oracle) <= 1e-12,
              "window " + std::to_string(trial) + ": |H - oracle| = " +
                  std::to_string(std::abs(h - oracle)));
    if (!c.ok) break;
  }
  return c;
}

// --- criterion 2: entropy bounds and extremes ------------------------------

Check criterion_entropy_extremes() {
  Check c;
  const std::vector<std::pair<int, int>> one_cell(37, {5, 5});
  c.require(joint_entropy_bits(one_cell) == 0.0, "single-cell window must give exactly 0 bits");

  for (const int B : {10, 100}) {
    std::vector<std::pair<int, int>> uniform;
    for (int i = 0; i < B; ++i) {
      for (int j = 0; j < B; ++j) uniform.emplace_back(i, j);
    }
    const double h = joint_entropy_bits(uniform);
    const double expected = 2.0 * std::log2(static_cast<double>(B));
    c.require(std::abs(h - expected) <= 1e-12,
              "uniform over " + std::to_string(B) + "^2 cells: |H - 2 log2 B| = " +
                  std::to_string(std::abs(h - expected)));
  }
  return c;
}

// --- criterion 3: robustness sweep ------------------------------------------

Check criterion_robustness_sweep() {
  Check c;
  const GeneratedScenario g = generate(two_regime_scenario(303, /*graded_dispersion=*/true));
  const SweepResult sweep = run_robustness_sweep(g.recording, PipelineConfig{});
  c.require(sweep.settings.size() == 25, "expected 25 settings");
  const double lo = sweep.min_correlation();
  c.require(lo >= 0.8, "minimum pairwise Spearman " + std::to_string(lo) + " < 0.8");
  return c;
}

// --- criterion 4: lag recovery ----------------------------------------------

Check criterion_lag_recovery() {
  Check c;
  const PipelineConfig cfg;
  for (const double offset : {-0.1, 0.0, 0.05, 0.1}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Recording rec = make_sync_scenario(offset, seed);
      const double lag = estimate_sync_lag(rec, cfg, 0.5);
      c.require(std::abs(lag - offset) <= 0.02,
                "offset " + std::to_string(offset) + " seed " + std::to_string(seed) +
                    ": recovered " + std::to_string(lag));
      if (!c.ok) return c;
    }
  }
  return c;
}

// --- criterion 5: Savitzky-Golay correctness --------------------------------

Check criterion_savgol() {
  Check c;
  const auto kernel = savgol_coefficients({5, 2});
  const double expected[5] = {-3.0 / 35.0, 12.0 / 35.0, 17.0 / 35.0, 12.0 / 35.0, -3.0 / 35.0};
  for (int i = 0; i < 5; ++i) {
    c.require(std::abs(kernel[static_cast<std::size_t>(i)] - expected[i]) <= 1e-12,
              "kernel[" + std::to_string(i) + "] off by more than 1e-12");
  }

  const double rate = 40.0;
  TimeSeries cubic;
  cubic.stream_id = "poly";
  cubic.channels = {"v"};
  for (int i = 0; i < 400; ++i) {
    const double t = i / rate;
    cubic.timestamps.push_back(t);
    cubic.values.push_back(((t - 3.0) * t + 2.0) * t - 5.0);  // degree 3
  }
  const TimeSeries filtered = savgol_filter(cubic, {11, 3});
  for (std::size_t i = 5; i + 5 < filtered.sample_count(); ++i) {
    c.require(std::abs(filtered.values[i] - cubic.values[i]) <= 1e-9,
              "cubic reproduction error above 1e-9 at sample " + std::to_string(i));
    if (!c.ok) break;
  }
  return c;
}

// --- criterion 6: velocity oracle -------------------------------------------

Check criterion_velocity() {
  Check c;
  const double rate = 40.0;
  const double omega = 2.0 * std::numbers::pi;  // 1 Hz
  TimeSeries accel;
  accel.stream_id = "a";
  accel.channels = {"x", "y", "z"};
  for (int i = 0; i < 800; ++i) {
    const double t = i / rate;
    accel.timestamps.push_back(t);
    accel.values.push_back(omega * std::cos(omega * t));
    accel.values.push_back(0.0);
    accel.values.push_back(0.0);
  }
  const TimeSeries v = velocity_magnitude(accel, 1.0);
  for (std::size_t i = 0; i < v.sample_count(); ++i) {
    const double expected = std::abs(std::sin(omega * v.timestamps[i]));
    c.require(std::abs(v.values[i] - expected) <= 0.01,
              "closed-form error " + std::to_string(std::abs(v.values[i] - expected)) +
                  " at t=" + std::to_string(v.timestamps[i]));
    if (!c.ok) break;
  }

  CounterRng rng(606, "acceptance_leak");
  for (int trial = 0; trial < 100; ++trial) {
    const double leak = rng.uniform(0.8, 0.999);
    const double amp = rng.uniform(0.1, 10.0);
    TimeSeries a;
    a.stream_id = "rand";
    a.channels = {"x", "y", "z"};
    for (int i = 0; i < 200; ++i) {
      a.timestamps.push_back(i / rate);
      for (int ch = 0; ch < 3; ++ch) a.values.push_back(rng.uniform(-amp, amp));
    }
    const TimeSeries vr = velocity_magnitude(a, leak);
    const double bound = std::sqrt(3.0) * (1.0 / rate) * amp / (1.0 - leak) + 1e-9;
    for (double s : vr.values) {
      c.require(s >= 0.0 && s <= bound, "leaky-integrator bound violated");
      if (!c.ok) return c;
    }
  }
  return c;
}

// --- criterion 7: proximity -------------------------------------------------

Check criterion_proximity() {
  Check c;
  const auto rssi1 = [](const std::vector<double>& vals) {
    TimeSeries s;
    s.stream_id = "rssi";
    s.channels = {"rssi"};
    for (std::size_t i = 0; i < vals.size(); ++i) {
      s.timestamps.push_back(static_cast<double>(i) * 0.1);
    }
    s.values = vals;
    return s;
  };

  const TimeSeries fused = fuse_rssi(rssi1({-60.0, kMissing, kMissing}),
                                     rssi1({-70.0, -72.0, kMissing}));
  c.require(fused.values[0] == -60.0, "fusion must take the maximum");
  c.require(fused.values[1] == -72.0, "single present source must pass through");
  c.require(is_missing(fused.values[2]), "both missing must stay missing");

  const CalibrationModel model{-50.0, -85.0, 3.0};
  const ProximitySeries band = discretize(rssi1({-51.0, -84.0, -70.0, kMissing}), model);
  c.require(band.states[0] == ProximityState::NearPatient, "-51 dBm must be NearPatient");
  c.require(band.states[1] == ProximityState::NearTable, "-84 dBm must be NearTable");
  c.require(band.states[2] == ProximityState::Intermediate, "-70 dBm must be Intermediate");
  c.require(band.states[3] == ProximityState::Intermediate, "missing must be Intermediate");

  std::vector<double> sweep;
  for (double v = -100.0; v <= -30.0; v += 0.1) sweep.push_back(v);
  const ProximitySeries states = discretize(rssi1(sweep), model);
  const auto rank = [](ProximityState s) {
    return s == ProximityState::NearTable ? 0 : (s == ProximityState::Intermediate ? 1 : 2);
  };
  for (std::size_t i = 1; i < states.size(); ++i) {
    c.require(rank(states.states[i]) >= rank(states.states[i - 1]),
              "discretization must be monotone in RSSI");
    if (!c.ok) break;
  }

  bool threw = false;
  try {
    calibrate(rssi1(std::vector<double>(25, -80.0)), rssi1(std::vector<double>(25, -78.0)));
  } catch (const Error& e) {
    threw = e.code() == Errc::InvertedCalibration;
  }
  c.require(threw, "inverted calibration must be rejected");
  return c;
}

// --- criterion 8: end-to-end synthetic ABCDE --------------------------------

Check criterion_end_to_end() {
  Check c;
  const GeneratedScenario g = generate(abcde_scenario(808));
  const AnalysisResult r = analyze(g.recording, PipelineConfig{});
  c.require(r.summaries.size() == g.truth.targets.size(), "phase count mismatch");

  for (std::size_t i = 0; i < r.summaries.size() && c.ok; ++i) {
    const auto& est = r.summaries[i];
    const auto& target = g.truth.targets[i];
    const std::string tag = "phase " + est.label + ": ";

    const auto check_speed = [&](double got, double want, const char* hand) {
      if (want > 0.0) {
        c.require(std::abs(got - want) <= 0.2 * want,
                  tag + std::string(hand) + " speed " + std::to_string(got) + " vs target " +
                      std::to_string(want) + " (+-20%)");
      } else {
        c.require(got <= 0.05, tag + std::string(hand) + " speed " + std::to_string(got) +
                                   " expected near zero");
      }
    };
    check_speed(est.mean_speed_rh, target.target_speed_rh_mps, "rh");
    check_speed(est.mean_speed_lh, target.target_speed_lh_mps, "lh");
    c.require(std::abs(est.frac_near_patient - target.frac_near_patient) <= 0.1,
              tag + "NearPatient fraction " + std::to_string(est.frac_near_patient));
    c.require(std::abs(est.frac_near_table - target.frac_near_table) <= 0.1,
              tag + "NearTable fraction " + std::to_string(est.frac_near_table));
    c.require(std::abs(est.low_entropy_fraction - target.low_entropy_fraction) <= 0.1,
              tag + "low-entropy fraction " + std::to_string(est.low_entropy_fraction));
    c.require(est.proximity_transitions >= target.min_proximity_transitions,
              tag + "expected alternating proximity");
  }
  for (const auto& v : r.verdicts) {
    c.require(v.verdict == Verdict::Consistent,
              "phase " + v.label + " verdict not consistent: " + v.detail);
  }
  return c;
}

// --- criterion 9: rendering determinism and structure ------------------------

Check criterion_rendering() {
  Check c;
  const fs::path root = fs::temp_directory_path() / "behavigram_acceptance_render";
  fs::remove_all(root);
  const fs::path session = root / "session";
  write_scenario(generate(abcde_scenario(909)), session);

  const PipelineConfig cfg;
  for (int run = 0; run < 2; ++run) {
    const Recording rec = load_recording(session);
    const AnalysisResult result = analyze(rec, cfg);
    const fs::path out = root / ("out" + std::to_string(run));
    write_analysis(result, out);
    BehaviorgramSpec spec;
    spec.variant = BehaviorgramVariant::Extended;
    std::ofstream(out / "extended.svg", std::ios::binary)
        << render_behaviorgram(render_inputs(result), spec);
    spec.variant = BehaviorgramVariant::Simplified;
    std::ofstream(out / "simplified.svg", std::ios::binary)
        << render_behaviorgram(render_inputs(result), spec);
  }
  for (const char* f : {"velocity_rh.csv", "velocity_lh.csv", "rssi_fused.csv",
                        "proximity.csv", "entropy.csv", "low_entropy_mask.csv",
                        "phase_report.csv", "analysis.json", "extended.svg",
                        "simplified.svg"}) {
    c.require(read_file(root / "out0" / f) == read_file(root / "out1" / f),
              std::string(f) + " differs between identical runs");
  }

  // Element counts equal present-sample counts.
  {
    const Recording rec = load_recording(session);
    const AnalysisResult result = analyze(rec, cfg);
    const std::string svg = read_file(root / "out0" / "extended.svg");
    std::size_t present_rh = 0, present_lh = 0;
    for (double v : result.velocity_rh.values) present_rh += !is_missing(v);
    for (double v : result.velocity_lh.values) present_lh += !is_missing(v);
    c.require(count_occurrences(svg, "class=\"bar rh\"") == present_rh,
              "rh bar count != present rh samples");
    c.require(count_occurrences(svg, "class=\"bar lh\"") == present_lh,
              "lh bar count != present lh samples");
  }

  // Right-hand-only burst: bars extend only below the central axis.
  {
    TimeSeries vel_rh, vel_lh, rssi;
    vel_rh.stream_id = "velocity_rh";
    vel_rh.channels = {"speed"};
    for (int i = 0; i < 200; ++i) {
      vel_rh.timestamps.push_back(i / 40.0);
      vel_rh.values.push_back(i > 80 && i < 120 ? 0.4 : 0.0);
    }
    vel_lh = vel_rh;
    vel_lh.stream_id = "velocity_lh";
    vel_lh.values.assign(vel_lh.sample_count(), 0.0);
    rssi = vel_rh;
    rssi.stream_id = "rssi_fused";
    rssi.channels = {"rssi"};
    rssi.values.assign(rssi.sample_count(), -55.0);
    ProximitySeries prox;
    prox.timestamps = vel_rh.timestamps;
    prox.states.assign(vel_rh.sample_count(), ProximityState::NearPatient);
    LowEntropyMask mask;
    std::vector<PhaseAnnotation> phases = {{"I", 0.0, 5.0}};
    RenderInputs in;
    in.velocity_rh = &vel_rh;
    in.velocity_lh = &vel_lh;
    in.fused_rssi = &rssi;
    in.proximity = &prox;
    in.mask = &mask;
    in.annotations = &phases;
    const std::string svg = render_extended(in, {});

    const std::size_t axis_pos = svg.find("class=\"axis\"");
    c.require(axis_pos != std::string::npos, "missing central axis");
    const double cy = std::stod(svg.substr(svg.rfind("y1=\"", axis_pos) + 4));
    std::size_t pos = 0;
    bool saw_tall_rh = false;
    while ((pos = svg.find("class=\"bar rh\"", pos)) != std::string::npos) {
      const double y = std::stod(svg.substr(svg.rfind("y=\"", pos) + 3));
      c.require(std::abs(y - cy) <= 1e-9, "rh bar does not start at the central axis");
      const std::size_t hpos = svg.rfind("height=\"", pos);
      if (std::stod(svg.substr(hpos + 8)) > 1.0) saw_tall_rh = true;
      ++pos;
      if (!c.ok) break;
    }
    c.require(saw_tall_rh, "expected visible rh burst bars");
    pos = 0;
    while ((pos = svg.find("class=\"bar lh\"", pos)) != std::string::npos) {
      const double y = std::stod(svg.substr(svg.rfind("y=\"", pos) + 3));
      const double h = std::stod(svg.substr(svg.rfind("height=\"", pos) + 8));
      c.require(y + h <= cy + 1e-6, "lh bar extends below the central axis");
      ++pos;
      if (!c.ok) break;
    }
  }
  fs::remove_all(root);
  return c;
}

// --- criterion 10: round trips ----------------------------------------------

Check criterion_round_trip() {
  Check c;
  const fs::path root = fs::temp_directory_path() / "behavigram_acceptance_roundtrip";
  fs::remove_all(root);

  const GeneratedScenario g = generate(abcde_scenario(1010));
  save_recording(g.recording, root / "a");
  const Recording back = load_recording(root / "a");
  save_recording(back, root / "b");
  for (const char* f : {"accel_rh.csv", "accel_lh.csv", "rssi_rh.csv", "rssi_lh.csv",
                        "gaze.csv", "markers.csv", "meta.json"}) {
    c.require(read_file(root / "a" / f) == read_file(root / "b" / f),
              std::string("load/save round trip changed ") + f);
  }

  write_scenario(generate(abcde_scenario(1010)), root / "g1");
  write_scenario(generate(abcde_scenario(1010)), root / "g2");
  for (const char* f : {"accel_rh.csv", "accel_lh.csv", "rssi_rh.csv", "rssi_lh.csv",
                        "gaze.csv", "markers.csv", "meta.json", "ground_truth.csv"}) {
    c.require(read_file(root / "g1" / f) == read_file(root / "g2" / f),
              std::string("generator not byte-deterministic for ") + f);
  }
  fs::remove_all(root);
  return c;
}

struct Criterion {
  const char* name;
  std::function<Check()> run;
  double time_limit_s;  // 0 = no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"entropy equals brute-force oracle (1e-12, 1000 windows, B<=25)", criterion_entropy_oracle,
       5.0},
      {"entropy bounds and extremes (0 bits; 2 log2 B for B in {10,100})",
       criterion_entropy_extremes, 0.0},
      {"robustness sweep Spearman >= 0.8 across bins x windows", criterion_robustness_sweep,
       30.0},
      {"lag recovery within +-0.02 s for offsets {-0.1,0,0.05,0.1} x 20 seeds",
       criterion_lag_recovery, 10.0},
      {"savgol kernel match (1e-12) and polynomial reproduction (1e-9)", criterion_savgol, 0.0},
      {"velocity closed-form oracle (<=0.01 m/s) and leaky bound", criterion_velocity, 0.0},
      {"proximity fusion, dead band, monotonicity, inversion rejection", criterion_proximity,
       0.0},
      {"end-to-end ABCDE: targets within tolerance, verdicts consistent", criterion_end_to_end,
       20.0},
      {"rendering determinism and accelerograph structure", criterion_rendering, 0.0},
      {"session round trip and generator byte determinism", criterion_round_trip, 0.0},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criteria[i].run();
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].time_limit_s > 0.0 && elapsed > criteria[i].time_limit_s) {
      check.ok = false;
      check.detail = "runtime " + std::to_string(elapsed) + " s exceeds limit";
    }
    std::printf("[%s] criterion %zu: %s (%.2fs)\n", check.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name, elapsed);
    if (!check.ok) {
      std::printf("       %s\n", check.detail.c_str());
      ++failures;
    }
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
