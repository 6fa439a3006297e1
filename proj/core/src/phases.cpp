#include "behavigram/phases.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"
#include "behavigram/stats.hpp"

namespace behavigram {

namespace {

constexpr const char* kPhasePrefix = "phase:";

bool is_phase_marker(const std::string& label) {
  return label.rfind(kPhasePrefix, 0) == 0 && label.size() > 6;
}

}  // namespace

std::vector<PhaseAnnotation> phases_from_markers(const MarkerStream& markers,
                                                 std::pair<double, double> recording_span) {
  std::vector<PhaseAnnotation> out;
  for (const auto& e : markers.events) {
    if (!is_phase_marker(e.label)) continue;
    if (!out.empty()) {
      out.back().t_end = e.t;
      if (!(out.back().t_start < out.back().t_end)) {
        fail(Errc::InvalidSpec, "zero-length phase '" + out.back().label + "' at t=" +
                                    csv::format_number(out.back().t_start));
      }
    }
    out.push_back({e.label.substr(6), e.t, recording_span.second});
  }
  if (out.empty()) fail(Errc::NoPhaseMarkers, "no 'phase:' markers in stream");
  if (!(out.back().t_start < out.back().t_end)) {
    fail(Errc::InvalidSpec, "last phase starts at or after the recording end");
  }
  return out;
}

PhaseSummary summarize_phase(const PhaseAnnotation& annotation, const TimeSeries& velocity_rh,
                             const TimeSeries& velocity_lh, const ProximitySeries& proximity,
                             const LowEntropyMask& mask, const MarkerStream& markers) {
  if (!(annotation.t_start < annotation.t_end)) {
    fail(Errc::EmptyInterval, "phase '" + annotation.label + "' has no duration");
  }

  PhaseSummary s;
  s.label = annotation.label;
  s.t_start = annotation.t_start;
  s.t_end = annotation.t_end;
  s.duration_s = annotation.t_end - annotation.t_start;

  const auto speed_stats = [&](const TimeSeries& vel, double& out_mean, double& out_p95) {
    std::vector<double> speeds;
    for (std::size_t i = 0; i < vel.sample_count(); ++i) {
      const double t = vel.timestamps[i];
      if (t < annotation.t_start || t >= annotation.t_end) continue;
      const double v = vel.values[i];
      if (!is_missing(v)) speeds.push_back(v);
    }
    out_mean = speeds.empty() ? kMissing : mean(speeds);
    out_p95 = speeds.empty() ? kMissing : percentile(std::move(speeds), 95.0);
  };
  speed_stats(velocity_rh, s.mean_speed_rh, s.p95_speed_rh);
  speed_stats(velocity_lh, s.mean_speed_lh, s.p95_speed_lh);

  long n_patient = 0, n_table = 0, n_mid = 0;
  int transitions = 0;
  bool have_prev = false;
  ProximityState prev = ProximityState::Intermediate;
  for (std::size_t i = 0; i < proximity.size(); ++i) {
    const double t = proximity.timestamps[i];
    if (t < annotation.t_start || t >= annotation.t_end) continue;
    switch (proximity.states[i]) {
      case ProximityState::NearPatient: ++n_patient; break;
      case ProximityState::NearTable: ++n_table; break;
      case ProximityState::Intermediate: ++n_mid; break;
    }
    if (have_prev && proximity.states[i] != prev) ++transitions;
    prev = proximity.states[i];
    have_prev = true;
  }
  const long n_prox = n_patient + n_table + n_mid;
  if (n_prox > 0) {
    s.frac_near_patient = static_cast<double>(n_patient) / static_cast<double>(n_prox);
    s.frac_near_table = static_cast<double>(n_table) / static_cast<double>(n_prox);
    s.frac_intermediate = static_cast<double>(n_mid) / static_cast<double>(n_prox);
  } else {
    s.frac_near_patient = s.frac_near_table = s.frac_intermediate = kMissing;
  }
  s.proximity_transitions = transitions;

  s.low_entropy_fraction = mask.overlap_s(annotation.t_start, annotation.t_end) / s.duration_s;

  for (const auto& e : markers.events) {
    if (e.t >= annotation.t_start && e.t < annotation.t_end && !is_phase_marker(e.label)) {
      ++s.marker_count;
    }
  }
  return s;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
    case Verdict::NoRule: return "no-rule";
  }
  return "no-rule";
}

namespace {

double phase_activity(const PhaseSummary& s) {
  const double rh = is_missing(s.mean_speed_rh) ? 0.0 : s.mean_speed_rh;
  const double lh = is_missing(s.mean_speed_lh) ? 0.0 : s.mean_speed_lh;
  return (rh + lh) / 2.0;
}

}  // namespace

std::vector<SignatureCheck> match_signatures(const std::vector<PhaseSummary>& summaries,
                                             const SignatureRules& rules) {
  // Session-global mean speed, duration-weighted over the annotated phases.
  double weighted = 0.0, total = 0.0;
  for (const auto& s : summaries) {
    weighted += phase_activity(s) * s.duration_s;
    total += s.duration_s;
  }
  const double global_mean = total > 0.0 ? weighted / total : 0.0;

  std::vector<SignatureCheck> out;
  for (const auto& s : summaries) {
    SignatureCheck check;
    check.label = s.label;

    const double activity = phase_activity(s);
    const bool low_activity = activity < rules.low_activity_frac * global_mean;
    const bool high_activity = activity >= rules.high_activity_frac * global_mean;
    const bool high_focus = s.low_entropy_fraction >= rules.high_focus_min_fraction;
    const bool near_patient = !is_missing(s.frac_near_patient) &&
                              s.frac_near_patient >= rules.near_patient_min_fraction;
    const bool alternating = s.proximity_transitions >= rules.alternating_min_transitions;

    std::vector<std::string> failed;
    bool has_rule = true;
    if (s.label == "I") {
      // Sustained hand movements close to the patient with high visual focus.
      if (!high_activity) failed.push_back("expected high hand activity");
      if (!near_patient) failed.push_back("expected NearPatient majority");
      if (!high_focus) failed.push_back("expected high visual focus");
    } else if (s.label == "IIa") {
      // Visual observation only.
      if (!low_activity) failed.push_back("expected low hand activity");
      if (!high_focus) failed.push_back("expected high visual focus");
    } else if (s.label == "IIb") {
      // Stethoscope use: some hand movement, still observation-dominated.
      if (low_activity) failed.push_back("expected moderate hand activity, found low");
      if (high_activity) failed.push_back("expected moderate hand activity, found high");
      if (!high_focus) failed.push_back("expected high visual focus");
    } else if (s.label == "III") {
      // Fetching instruments: proximity changes, alternating hand activity,
      // coherent visual perception.
      if (!alternating) failed.push_back("expected alternating proximity");
      if (low_activity) failed.push_back("expected hand activity above the low band");
      if (!high_focus) failed.push_back("expected low gaze entropy");
    } else if (s.label == "IV") {
      // Checklist review: proximity changes, short movement bouts, visual focus.
      if (!alternating) failed.push_back("expected alternating proximity");
      if (high_activity) failed.push_back("expected only short hand-movement periods");
      if (!high_focus) failed.push_back("expected visual focus");
    } else {
      has_rule = false;
    }

    if (!has_rule) {
      check.verdict = Verdict::NoRule;
    } else if (failed.empty()) {
      check.verdict = Verdict::Consistent;
    } else {
      check.verdict = Verdict::Inconsistent;
      for (std::size_t i = 0; i < failed.size(); ++i) {
        if (i > 0) check.detail += "; ";
        check.detail += failed[i];
      }
    }
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace behavigram
