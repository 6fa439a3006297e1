#pragma once

#include <string>
#include <vector>

#include "behavigram/gaze_entropy.hpp"
#include "behavigram/proximity.hpp"
#include "behavigram/time_series.hpp"

namespace behavigram {

// Labeled interval of the procedure timeline, [t_start, t_end).
struct PhaseAnnotation {
  std::string label;
  double t_start{0.0};
  double t_end{0.0};
};

// Every marker labeled `phase:<label>` opens an annotation closed by the next
// phase marker or the recording end. Non-phase markers are ignored here.
// Throws NoPhaseMarkers.
std::vector<PhaseAnnotation> phases_from_markers(const MarkerStream& markers,
                                                 std::pair<double, double> recording_span);

struct PhaseSummary {
  std::string label;
  double t_start{0.0};
  double t_end{0.0};
  double duration_s{0.0};
  double mean_speed_rh{0.0};
  double mean_speed_lh{0.0};
  double p95_speed_rh{0.0};
  double p95_speed_lh{0.0};
  double frac_near_patient{0.0};
  double frac_near_table{0.0};
  double frac_intermediate{0.0};
  double low_entropy_fraction{0.0};
  int proximity_transitions{0};
  int marker_count{0};  // non-phase markers inside the interval
};

// Statistics over present samples within [t_start, t_end); missing samples
// are excluded from means. Throws EmptyInterval.
PhaseSummary summarize_phase(const PhaseAnnotation& annotation, const TimeSeries& velocity_rh,
                             const TimeSeries& velocity_lh, const ProximitySeries& proximity,
                             const LowEntropyMask& mask, const MarkerStream& markers);

// Thresholds for the qualitative phase signatures. Activity levels are
// relative to the session-global mean speed (duration-weighted over phases).
struct SignatureRules {
  double low_activity_frac{0.25};        // low hand activity: below this x global mean
  double high_activity_frac{0.75};       // high hand activity: at least this x global mean
  double high_focus_min_fraction{0.5};   // high visual focus: low-entropy fraction at least this
  double near_patient_min_fraction{0.6}; // close to patient
  int alternating_min_transitions{2};    // alternating proximity
};

enum class Verdict { Consistent, Inconsistent, NoRule };

const char* to_string(Verdict verdict);

struct SignatureCheck {
  std::string label;
  Verdict verdict{Verdict::NoRule};
  std::string detail;  // failed clauses, ';'-separated
};

// Validation report: each summary is checked against the rule for its label
// (I, IIa, IIb, III, IV). Labels without a rule get NoRule.
std::vector<SignatureCheck> match_signatures(const std::vector<PhaseSummary>& summaries,
                                             const SignatureRules& rules = {});

}  // namespace behavigram
