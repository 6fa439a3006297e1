#include "behavigram/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "behavigram/errors.hpp"

namespace behavigram {

TimeSeries resample_uniform(const TimeSeries& series, double rate_hz,
                            const ResampleOptions& options) {
  if (!(rate_hz > 0.0)) fail(Errc::InvalidSpec, "resample rate must be positive");
  if (series.empty()) fail(Errc::EmptySeries, "cannot resample empty series '" + series.stream_id + "'");

  const double t_first = series.start_time();
  const double t_last = series.end_time();
  const long k0 = static_cast<long>(std::ceil(t_first * rate_hz - 1e-9));
  const long k1 = static_cast<long>(std::floor(t_last * rate_hz + 1e-9));
  if (k1 < k0) fail(Errc::EmptySeries, "series '" + series.stream_id + "' spans no grid point");
  const std::size_t n_out = static_cast<std::size_t>(k1 - k0 + 1);

  TimeSeries out;
  out.stream_id = series.stream_id;
  out.channels = series.channels;
  out.nominal_rate_hz = rate_hz;
  out.annotations = series.annotations;
  out.timestamps.resize(n_out);
  for (std::size_t i = 0; i < n_out; ++i) {
    out.timestamps[i] = static_cast<double>(k0 + static_cast<long>(i)) / rate_hz;
  }
  out.values.assign(n_out * series.channel_count(), kMissing);

  const std::size_t nch = series.channel_count();
  std::vector<std::size_t> present;  // input row indices with a present value, per channel
  for (std::size_t c = 0; c < nch; ++c) {
    present.clear();
    for (std::size_t i = 0; i < series.sample_count(); ++i) {
      if (!is_missing(series.at(i, c))) present.push_back(i);
    }
    if (present.size() < 2) continue;  // not enough support, channel stays missing

    std::vector<double> pt(present.size());
    for (std::size_t i = 0; i < present.size(); ++i) pt[i] = series.timestamps[present[i]];

    for (std::size_t g = 0; g < n_out; ++g) {
      const double t = out.timestamps[g];
      if (t < pt.front() - 1e-12 || t > pt.back() + 1e-12) continue;
      const auto it = std::lower_bound(pt.begin(), pt.end(), t);
      std::size_t hi = static_cast<std::size_t>(it - pt.begin());
      if (hi == pt.size()) hi = pt.size() - 1;
      if (std::abs(pt[hi] - t) <= 1e-12) {
        out.at(g, c) = series.at(present[hi], c);
        continue;
      }
      if (hi == 0) {  // t just before the first present sample (within tolerance)
        out.at(g, c) = series.at(present[0], c);
        continue;
      }
      const std::size_t lo = hi - 1;
      // Bridge only when the bracket holds no explicitly-missing rows, or the
      // missing run is short enough to count as a dropout.
      const bool has_missing_rows = present[hi] > present[lo] + 1;
      const double span = pt[hi] - pt[lo];
      if (has_missing_rows && span > options.max_gap_s + 1e-12) continue;
      const double w = (t - pt[lo]) / span;
      const double va = series.at(present[lo], c);
      const double vb = series.at(present[hi], c);
      out.at(g, c) = va + (vb - va) * w;
    }
  }
  return out;
}

}  // namespace behavigram
