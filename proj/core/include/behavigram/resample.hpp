#pragma once

#include "behavigram/time_series.hpp"

namespace behavigram {

struct ResampleOptions {
  // Interpolation bridges the span between two present neighbors unless the
  // input has explicitly-missing rows in between and the span exceeds this.
  // Longer explicit gaps are genuine signal absence, not dropouts.
  double max_gap_s{0.2};
};

// Places the series on the grid t_k = k/rate covering its time range.
// Values are linearly interpolated per channel between neighboring present
// samples. Grid points inside a too-long missing run, or outside a channel's
// present range, come out missing. Throws EmptySeries.
TimeSeries resample_uniform(const TimeSeries& series, double rate_hz,
                            const ResampleOptions& options = {});

}  // namespace behavigram
