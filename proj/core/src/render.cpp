#include "behavigram/render.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"
#include "behavigram/stats.hpp"
#include "behavigram/svg.hpp"

namespace behavigram {

TimeAxis make_time_axis(double t_min, double t_max, double x_left, double width_px) {
  if (!(t_max > t_min)) fail(Errc::EmptyRange, "time range is empty");
  TimeAxis axis;
  axis.t_min = t_min;
  axis.x_left = x_left;
  axis.px_per_s = width_px / (t_max - t_min);
  return axis;
}

namespace {

constexpr double kMarginL = 8.0;
constexpr double kMarginR = 8.0;
constexpr double kMarginT = 4.0;
constexpr double kMarginB = 8.0;
constexpr double kLabelStrip = 14.0;
constexpr double kPosTrack = 26.0;
constexpr double kTrackGap = 4.0;
constexpr const char* kMissingColor = "#808080";

struct SceneGeometry {
  double t0, t1;
  TimeAxis axis;
  double plot_w;
  std::size_t i0, i1;  // sample index range [i0, i1) of the common grid
  double dt;
  double speed_scale;
  double rssi_min, rssi_max;
};

void check_common_grid(const RenderInputs& in) {
  if (!in.velocity_rh || !in.velocity_lh || !in.fused_rssi || !in.proximity || !in.mask ||
      !in.annotations) {
    fail(Errc::InvalidSpec, "render inputs incomplete");
  }
  const auto& ts = in.velocity_rh->timestamps;
  const auto same = [&](const std::vector<double>& other) {
    if (other.size() != ts.size()) return false;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (std::abs(other[i] - ts[i]) > 1e-9) return false;
    }
    return true;
  };
  if (!same(in.velocity_lh->timestamps) || !same(in.fused_rssi->timestamps) ||
      !same(in.proximity->timestamps)) {
    fail(Errc::GridMismatch, "render inputs are not on one common grid");
  }
}

SceneGeometry make_geometry(const RenderInputs& in, const BehaviorgramSpec& spec) {
  check_common_grid(in);
  const auto& ts = in.velocity_rh->timestamps;
  if (ts.empty()) fail(Errc::EmptyRange, "no samples to render");

  SceneGeometry g;
  g.dt = in.velocity_rh->uniform_dt();
  g.t0 = spec.t_start;
  g.t1 = spec.t_end;
  if (g.t0 == 0.0 && g.t1 == 0.0) {
    g.t0 = ts.front();
    g.t1 = ts.back() + g.dt;
  }
  if (!(g.t1 > g.t0)) fail(Errc::EmptyRange, "behaviorgram time range is empty");

  g.i0 = static_cast<std::size_t>(
      std::lower_bound(ts.begin(), ts.end(), g.t0 - 1e-9) - ts.begin());
  g.i1 = static_cast<std::size_t>(
      std::lower_bound(ts.begin(), ts.end(), g.t1 - 1e-9) - ts.begin());
  if (g.i0 >= g.i1) fail(Errc::EmptyRange, "no samples inside the requested time range");

  g.plot_w = static_cast<double>(spec.width_px) - kMarginL - kMarginR;
  g.axis = make_time_axis(g.t0, g.t1, kMarginL, g.plot_w);

  std::vector<double> speeds;
  double rlo = std::numeric_limits<double>::infinity();
  double rhi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = g.i0; i < g.i1; ++i) {
    for (const TimeSeries* v : {in.velocity_rh, in.velocity_lh}) {
      const double s = v->values[i];
      if (!is_missing(s)) speeds.push_back(s);
    }
    const double r = in.fused_rssi->values[i];
    if (!is_missing(r)) {
      rlo = std::min(rlo, r);
      rhi = std::max(rhi, r);
    }
  }
  g.speed_scale = speeds.empty() ? 1.0 : percentile(std::move(speeds), 99.0);
  if (!(g.speed_scale > 0.0)) g.speed_scale = 1.0;
  if (!std::isfinite(rlo)) {
    rlo = 0.0;
    rhi = 0.0;
  }
  g.rssi_min = rlo;
  g.rssi_max = rhi;
  return g;
}

std::string rssi_fill(const SceneGeometry& g, const ColorRamp& ramp, double rssi) {
  if (is_missing(rssi)) return kMissingColor;
  const double span = g.rssi_max - g.rssi_min;
  const double u = span > 0.0 ? (rssi - g.rssi_min) / span : 1.0;
  return ramp.color(u);
}

void draw_phase_overlay(SvgDocument& doc, const SceneGeometry& g, const BehaviorgramSpec& spec,
                        const std::vector<PhaseAnnotation>& annotations, double y_top,
                        double y_bottom) {
  for (const auto& a : annotations) {
    if (a.t_end <= g.t0 || a.t_start >= g.t1) continue;
    const double x = g.axis.x(std::max(a.t_start, g.t0));
    doc.line(x, y_top, x, y_bottom,
             "class=\"phase-boundary\" stroke=\"#ffffff\" stroke-opacity=\"0.6\"");
    if (spec.labels) {
      const double xc = (g.axis.x(std::max(a.t_start, g.t0)) +
                         g.axis.x(std::min(a.t_end, g.t1))) / 2.0;
      doc.text(xc, kMarginT + kLabelStrip - 4.0,
               "class=\"phase-label\" fill=\"#ffffff\" font-family=\"monospace\" "
               "font-size=\"11\" text-anchor=\"middle\"",
               a.label);
    }
  }
  // Closing boundary of the final overlapping phase.
  for (auto it = annotations.rbegin(); it != annotations.rend(); ++it) {
    if (it->t_end > g.t0 && it->t_end <= g.t1) {
      const double x = g.axis.x(it->t_end);
      doc.line(x, y_top, x, y_bottom,
               "class=\"phase-boundary\" stroke=\"#ffffff\" stroke-opacity=\"0.6\"");
      break;
    }
  }
}

void draw_position_track(SvgDocument& doc, const SceneGeometry& g, const RenderInputs& in,
                         double y, double height) {
  const double lane_h = (height - 2.0) / 2.0;
  doc.rect(g.axis.x_left, y, g.plot_w, height,
           "class=\"track-outline\" fill=\"none\" stroke=\"#333333\"");
  const auto& prox = *in.proximity;
  std::size_t i = g.i0;
  while (i < g.i1) {
    const ProximityState state = prox.states[i];
    std::size_t j = i;
    while (j + 1 < g.i1 && prox.states[j + 1] == state) ++j;
    if (state != ProximityState::Intermediate) {
      const double x = g.axis.x(prox.timestamps[i]);
      const double x2 = g.axis.x(prox.timestamps[j]) + g.dt * g.axis.px_per_s;
      const bool patient = state == ProximityState::NearPatient;
      const double lane_y = patient ? y : y + lane_h + 2.0;
      doc.rect(x, lane_y, x2 - x, lane_h,
               patient ? "class=\"pos patient\" fill=\"#d8d8d8\""
                       : "class=\"pos table\" fill=\"#8899aa\"");
    }
    i = j + 1;
  }
}

void draw_entropy_track(SvgDocument& doc, const SceneGeometry& g, const RenderInputs& in,
                        double y, double height) {
  doc.rect(g.axis.x_left, y, g.plot_w, height,
           "class=\"track-outline\" fill=\"none\" stroke=\"#333333\"");
  for (const auto& [a, b] : in.mask->intervals) {
    if (b <= g.t0 || a >= g.t1) continue;
    const double x1 = g.axis.x(std::max(a, g.t0));
    const double x2 = g.axis.x(std::min(b, g.t1));
    doc.rect(x1, y, x2 - x1, height, "class=\"lowent\" fill=\"#9ecbff\"");
  }
}

}  // namespace

std::string render_extended(const RenderInputs& in, const BehaviorgramSpec& spec) {
  if (spec.width_px <= 0 || spec.height_px <= 0) {
    fail(Errc::InvalidSpec, "behaviorgram dimensions must be positive");
  }
  const SceneGeometry g = make_geometry(in, spec);
  const ColorRamp ramp = ColorRamp::named(spec.colormap);

  const double label_strip = spec.labels ? kLabelStrip : 0.0;
  const double pos_y = kMarginT + label_strip;
  const double accel_y = pos_y + kPosTrack + kTrackGap;
  const double entropy_h = static_cast<double>(spec.entropy_track_px);
  const double entropy_y = static_cast<double>(spec.height_px) - kMarginB - entropy_h;
  const double accel_h = entropy_y - kTrackGap - accel_y;
  if (accel_h < 10.0) fail(Errc::InvalidSpec, "behaviorgram height too small for its tracks");
  const double cy = accel_y + accel_h / 2.0;
  const double half_h = accel_h / 2.0 - 1.0;

  SvgDocument doc(spec.width_px, spec.height_px);
  doc.desc("variant=extended;speed_scale_mps=" + csv::format_number(g.speed_scale) +
           ";rssi_min_dbm=" + csv::format_number(g.rssi_min) +
           ";rssi_max_dbm=" + csv::format_number(g.rssi_max) +
           ";colormap=" + spec.colormap);
  doc.rect(0, 0, spec.width_px, spec.height_px, "class=\"bg\" fill=\"#101010\"");

  draw_position_track(doc, g, in, pos_y, kPosTrack);

  // Mirrored accelerograph: left hand above the central axis, right hand
  // below, bar color encodes fused RSSI (brighter = stronger = closer).
  const double bar_w = g.dt * g.axis.px_per_s;
  doc.open_group("class=\"accelerograph\"");
  for (std::size_t i = g.i0; i < g.i1; ++i) {
    const double t = in.velocity_rh->timestamps[i];
    const double x = g.axis.x(t);
    const std::string fill = rssi_fill(g, ramp, in.fused_rssi->values[i]);
    const double lh = in.velocity_lh->values[i];
    if (!is_missing(lh)) {
      const double h = std::min(lh / g.speed_scale, 1.0) * half_h;
      doc.rect(x, cy - h, bar_w, h, "class=\"bar lh\" fill=\"" + fill + "\"");
    }
    const double rh = in.velocity_rh->values[i];
    if (!is_missing(rh)) {
      const double h = std::min(rh / g.speed_scale, 1.0) * half_h;
      doc.rect(x, cy, bar_w, h, "class=\"bar rh\" fill=\"" + fill + "\"");
    }
  }
  doc.close_group();
  doc.line(g.axis.x_left, cy, g.axis.x_left + g.plot_w, cy,
           "class=\"axis\" stroke=\"#666666\"");

  draw_entropy_track(doc, g, in, entropy_y, entropy_h);
  draw_phase_overlay(doc, g, spec, *in.annotations, pos_y,
                     static_cast<double>(spec.height_px) - kMarginB);
  return doc.finish();
}

std::string render_simplified(const RenderInputs& in, const BehaviorgramSpec& spec) {
  if (spec.width_px <= 0 || spec.height_px <= 0) {
    fail(Errc::InvalidSpec, "behaviorgram dimensions must be positive");
  }
  const SceneGeometry g = make_geometry(in, spec);
  const ColorRamp ramp = ColorRamp::named(spec.colormap);

  const double label_strip = spec.labels ? kLabelStrip : 0.0;
  const double track_y = kMarginT + label_strip;
  const double track_h = static_cast<double>(spec.height_px) - kMarginB - track_y;
  if (track_h < 10.0) fail(Errc::InvalidSpec, "behaviorgram height too small for its track");
  const double base_y = track_y + track_h;

  SvgDocument doc(spec.width_px, spec.height_px);
  doc.desc("variant=simplified;speed_scale_mps=" + csv::format_number(g.speed_scale) +
           ";colormap=" + spec.colormap);
  doc.raw(
      "<defs>\n"
      "<pattern id=\"lowent-hatch\" width=\"6\" height=\"6\" "
      "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n"
      "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#ffffff\" "
      "stroke-opacity=\"0.35\" stroke-width=\"2\"/>\n"
      "</pattern>\n"
      "</defs>\n");
  doc.rect(0, 0, spec.width_px, spec.height_px, "class=\"bg\" fill=\"#101010\"");
  doc.rect(g.axis.x_left, track_y, g.plot_w, track_h,
           "class=\"track-outline\" fill=\"none\" stroke=\"#333333\"");

  // Combined activity: bar height is the stronger hand, brightness encodes
  // the proximity state (bright = beside the patient).
  const double bar_w = g.dt * g.axis.px_per_s;
  doc.open_group("class=\"activity\"");
  for (std::size_t i = g.i0; i < g.i1; ++i) {
    const double rh = in.velocity_rh->values[i];
    const double lh = in.velocity_lh->values[i];
    if (is_missing(rh) && is_missing(lh)) continue;
    const double speed = std::max(is_missing(rh) ? 0.0 : rh, is_missing(lh) ? 0.0 : lh);
    const double h = std::min(speed / g.speed_scale, 1.0) * (track_h - 2.0);
    double u = 0.45;
    switch (in.proximity->states[i]) {
      case ProximityState::NearPatient: u = 1.0; break;
      case ProximityState::Intermediate: u = 0.45; break;
      case ProximityState::NearTable: u = 0.12; break;
    }
    const double x = g.axis.x(in.velocity_rh->timestamps[i]);
    doc.rect(x, base_y - h, bar_w, h,
             "class=\"bar combined\" fill=\"" + ramp.color(u) + "\"");
  }
  doc.close_group();

  for (const auto& [a, b] : in.mask->intervals) {
    if (b <= g.t0 || a >= g.t1) continue;
    const double x1 = g.axis.x(std::max(a, g.t0));
    const double x2 = g.axis.x(std::min(b, g.t1));
    doc.rect(x1, track_y, x2 - x1, track_h,
             "class=\"lowent-hatch\" fill=\"url(#lowent-hatch)\"");
  }

  draw_phase_overlay(doc, g, spec, *in.annotations, track_y,
                     static_cast<double>(spec.height_px) - kMarginB);
  return doc.finish();
}

std::string render_behaviorgram(const RenderInputs& in, const BehaviorgramSpec& spec) {
  return spec.variant == BehaviorgramVariant::Extended ? render_extended(in, spec)
                                                       : render_simplified(in, spec);
}

}  // namespace behavigram
