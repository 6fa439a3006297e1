#include "behavigram/gaze_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"
#include "behavigram/spline.hpp"
#include "behavigram/stats.hpp"

namespace behavigram {

TimeSeries impute_blinks(const TimeSeries& gaze, const BlinkImputeOptions& options) {
  const double dt = gaze.uniform_dt();
  if (gaze.channel_count() < 2) fail(Errc::InvalidSpec, "gaze series needs two channels");
  if (options.spline_support < 2) fail(Errc::InvalidSpec, "spline_support must be >= 2");

  const std::size_t n = gaze.sample_count();
  TimeSeries out;
  out.stream_id = gaze.stream_id;
  out.channels = {gaze.channels[0], gaze.channels[1], "imputed"};
  out.timestamps = gaze.timestamps;
  out.nominal_rate_hz = gaze.nominal_rate_hz;
  out.annotations = gaze.annotations;
  out.annotations["blink_max_s"] = csv::format_number(options.blink_max_s);
  out.values.assign(n * 3, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.at(i, 0) = gaze.at(i, 0);
    out.at(i, 1) = gaze.at(i, 1);
    out.at(i, 2) = 0.0;
  }

  const std::size_t support = static_cast<std::size_t>(options.spline_support);
  for (std::size_t c = 0; c < 2; ++c) {
    std::size_t i = 0;
    while (i < n) {
      if (!is_missing(gaze.at(i, c))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < n && is_missing(gaze.at(j + 1, c))) ++j;
      const std::size_t run_len = j - i + 1;
      const bool interior = i > 0 && j + 1 < n;
      const bool short_enough = static_cast<double>(run_len) * dt <= options.blink_max_s + 1e-9;
      if (interior && short_enough) {
        // Nearest present samples on each side; other gaps may be skipped over.
        std::vector<std::size_t> knots;
        for (std::size_t k = i; k-- > 0 && knots.size() < support;) {
          if (!is_missing(gaze.at(k, c))) knots.push_back(k);
        }
        const std::size_t n_left = knots.size();
        std::reverse(knots.begin(), knots.end());
        for (std::size_t k = j + 1; k < n && knots.size() < n_left + support; ++k) {
          if (!is_missing(gaze.at(k, c))) knots.push_back(k);
        }
        const std::size_t n_right = knots.size() - n_left;
        if (n_left >= 2 && n_right >= 2) {
          std::vector<double> kx(knots.size()), ky(knots.size());
          for (std::size_t k = 0; k < knots.size(); ++k) {
            kx[k] = gaze.timestamps[knots[k]];
            ky[k] = gaze.at(knots[k], c);
          }
          const NaturalCubicSpline spline(kx, ky);
          for (std::size_t k = i; k <= j; ++k) {
            const double v = std::clamp(spline(gaze.timestamps[k]), 0.0, 1.0);
            out.at(k, c) = v;
            out.at(k, 2) = 1.0;
          }
        }
      }
      i = j + 1;
    }
  }
  return out;
}

void GazeGridSpec::validate() const {
  if (bins_per_axis < 2) fail(Errc::InvalidSpec, "bins_per_axis must be >= 2");
  if (!(window_s > 0.0)) fail(Errc::InvalidSpec, "window_s must be positive");
  if (!(hop_s > 0.0)) fail(Errc::InvalidSpec, "hop_s must be positive");
  if (hop_s > window_s) fail(Errc::InvalidSpec, "hop_s must not exceed window_s");
  if (min_valid < 0.0 || min_valid > 1.0) fail(Errc::InvalidSpec, "min_valid must be in [0,1]");
}

std::pair<int, int> bin_gaze(double x, double y, int bins_per_axis) {
  if (bins_per_axis < 2) fail(Errc::InvalidSpec, "bins_per_axis must be >= 2");
  if (is_missing(x) || is_missing(y) || x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) {
    fail(Errc::OutOfRange, "gaze sample (" + csv::format_number(x) + "," + csv::format_number(y) +
                               ") outside [0,1]^2");
  }
  const double b = static_cast<double>(bins_per_axis);
  const int i = std::min(static_cast<int>(std::floor(x * b)), bins_per_axis - 1);
  const int j = std::min(static_cast<int>(std::floor(y * b)), bins_per_axis - 1);
  return {i, j};
}

double joint_entropy_bits(std::span<const std::pair<int, int>> window_bins) {
  if (window_bins.empty()) fail(Errc::EmptyWindow, "entropy window has no samples");

  std::unordered_map<std::uint64_t, std::uint32_t> counts;
  counts.reserve(window_bins.size());
  for (const auto& [i, j] : window_bins) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
        static_cast<std::uint32_t>(j);
    ++counts[key];
  }

  // H = log2(n) - (1/n) sum c*log2(c). Kahan compensation keeps the large-n
  // uniform case exact to ~1 ulp; the single-cell case is exactly 0.
  const double n = static_cast<double>(window_bins.size());
  double sum = 0.0, comp = 0.0;
  for (const auto& [key, count] : counts) {
    const double c = static_cast<double>(count);
    const double term = c * std::log2(c) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  const double h = std::log2(n) - sum / n;
  return h < 0.0 ? 0.0 : h;
}

EntropySeries sliding_entropy(const TimeSeries& gaze, const GazeGridSpec& spec) {
  spec.validate();
  const double dt = gaze.uniform_dt();
  if (gaze.channel_count() < 2) fail(Errc::InvalidSpec, "gaze series needs two channels");

  const double t0 = gaze.start_time();
  const double t_end = gaze.end_time();
  const std::size_t n = gaze.sample_count();

  EntropySeries out;
  out.window_s = spec.window_s;
  out.hop_s = spec.hop_s;
  out.series.stream_id = gaze.stream_id + ".entropy";
  out.series.channels = {"H", "valid_fraction"};
  out.series.annotations["bins_per_axis"] = std::to_string(spec.bins_per_axis);
  out.series.annotations["window_s"] = csv::format_number(spec.window_s);
  out.series.annotations["hop_s"] = csv::format_number(spec.hop_s);

  // Windows may extend past either end of the data as long as their center
  // stays inside; truncated content counts against valid_fraction, so the
  // min_valid gate decides whether an edge window still yields an H.
  const std::size_t full_window =
      static_cast<std::size_t>(std::llround(spec.window_s / dt));
  const long m_min = static_cast<long>(std::ceil(-spec.window_s / (2.0 * spec.hop_s) - 1e-9));

  std::vector<std::pair<int, int>> bins;
  for (long m = m_min;; ++m) {
    const double start = t0 + static_cast<double>(m) * spec.hop_s;
    const double center = start + spec.window_s / 2.0;
    if (center > t_end + 1e-9) break;

    // Samples with t in [start, start + window).
    const auto lo_it = std::lower_bound(gaze.timestamps.begin(), gaze.timestamps.end(),
                                        start - 1e-9);
    const auto hi_it = std::lower_bound(gaze.timestamps.begin(), gaze.timestamps.end(),
                                        start + spec.window_s - 1e-9);
    const std::size_t i0 = static_cast<std::size_t>(lo_it - gaze.timestamps.begin());
    const std::size_t i1 = std::min(static_cast<std::size_t>(hi_it - gaze.timestamps.begin()), n);

    bins.clear();
    for (std::size_t i = i0; i < i1; ++i) {
      const double x = gaze.at(i, 0);
      const double y = gaze.at(i, 1);
      if (is_missing(x) || is_missing(y)) continue;
      bins.push_back(bin_gaze(x, y, spec.bins_per_axis));
    }
    const double valid = full_window > 0
                             ? static_cast<double>(bins.size()) / static_cast<double>(full_window)
                             : 0.0;
    const double h = (!bins.empty() && valid >= spec.min_valid)
                         ? joint_entropy_bits(bins)
                         : kMissing;
    out.series.timestamps.push_back(center);
    out.series.values.push_back(h);
    out.series.values.push_back(valid);
  }
  return out;
}

bool LowEntropyMask::contains(double t) const {
  for (const auto& [a, b] : intervals) {
    if (t >= a && t < b) return true;
  }
  return false;
}

double LowEntropyMask::overlap_s(double t0, double t1) const {
  double total = 0.0;
  for (const auto& [a, b] : intervals) {
    total += std::max(0.0, std::min(b, t1) - std::max(a, t0));
  }
  return total;
}

LowEntropyMask low_entropy_mask(const EntropySeries& entropy) {
  const TimeSeries& s = entropy.series;
  std::vector<double> present;
  for (std::size_t i = 0; i < s.sample_count(); ++i) {
    const double h = s.at(i, 0);
    if (!is_missing(h)) present.push_back(h);
  }
  if (present.empty()) fail(Errc::AllMissing, "entropy series has no present values");

  LowEntropyMask mask;
  mask.threshold_bits = mean(present);

  const double half_hop = entropy.hop_s / 2.0;
  std::size_t i = 0;
  const std::size_t n = s.sample_count();
  while (i < n) {
    const double h = s.at(i, 0);
    if (is_missing(h) || !(h < mask.threshold_bits)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n) {
      const double hn = s.at(j + 1, 0);
      if (is_missing(hn) || !(hn < mask.threshold_bits)) break;
      ++j;
    }
    mask.intervals.emplace_back(s.timestamps[i] - half_hop, s.timestamps[j] + half_hop);
    i = j + 1;
  }
  return mask;
}

SweepResult entropy_robustness_sweep(const TimeSeries& gaze, std::span<const int> bins,
                                     std::span<const double> windows_s, double hop_s,
                                     double min_valid) {
  SweepResult result;
  std::vector<EntropySeries> series;
  for (const int b : bins) {
    for (const double w : windows_s) {
      GazeGridSpec spec;
      spec.bins_per_axis = b;
      spec.window_s = w;
      spec.hop_s = hop_s;
      spec.min_valid = min_valid;
      result.settings.push_back({b, w});
      series.push_back(sliding_entropy(gaze, spec));
    }
  }

  // Window centers differ across window lengths, so every series is linearly
  // interpolated at shared probe times covering the common center range.
  double probe_lo = -std::numeric_limits<double>::infinity();
  double probe_hi = std::numeric_limits<double>::infinity();
  for (const auto& es : series) {
    if (es.series.empty()) {
      probe_lo = 0.0;
      probe_hi = -1.0;
      break;
    }
    probe_lo = std::max(probe_lo, es.series.start_time());
    probe_hi = std::min(probe_hi, es.series.end_time());
  }

  std::vector<double> probes;
  if (probe_hi >= probe_lo) {
    const long n_probes = static_cast<long>(std::floor((probe_hi - probe_lo) / hop_s + 1e-9));
    for (long k = 0; k <= n_probes; ++k) {
      probes.push_back(probe_lo + static_cast<double>(k) * hop_s);
    }
  }

  const auto sample_at = [](const EntropySeries& es, double t) {
    const auto& ts = es.series.timestamps;
    const auto it = std::lower_bound(ts.begin(), ts.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - ts.begin());
    if (hi >= ts.size()) hi = ts.size() - 1;
    if (hi == 0) return es.series.at(0, 0);
    const std::size_t lo = hi - 1;
    const double a = es.series.at(lo, 0);
    const double b = es.series.at(hi, 0);
    if (is_missing(a) || is_missing(b)) return kMissing;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    return a + (b - a) * w;
  };

  const std::size_t ns = series.size();
  result.correlation.assign(ns, std::vector<double>(ns, 1.0));
  for (std::size_t p = 0; p < ns; ++p) {
    for (std::size_t q = p + 1; q < ns; ++q) {
      std::vector<double> xs, ys;
      for (const double t : probes) {
        const double x = sample_at(series[p], t);
        const double y = sample_at(series[q], t);
        if (is_missing(x) || is_missing(y)) continue;
        xs.push_back(x);
        ys.push_back(y);
      }
      const double rho = spearman(xs, ys);
      result.correlation[p][q] = rho;
      result.correlation[q][p] = rho;
    }
  }
  return result;
}

double SweepResult::min_correlation() const {
  double lo = 1.0;
  for (std::size_t i = 0; i < correlation.size(); ++i) {
    for (std::size_t j = 0; j < correlation.size(); ++j) {
      if (i == j) continue;
      lo = std::min(lo, correlation[i][j]);
    }
  }
  return lo;
}

}  // namespace behavigram
