#pragma once

#include <vector>

#include "behavigram/time_series.hpp"

namespace behavigram {

struct SavGolSpec {
  int window_len{11};  // odd, >= 3
  int poly_order{3};   // >= 0, < window_len

  void validate() const;  // throws InvalidSpec
};

// Center-point evaluation weights of the least-squares polynomial fit of
// degree poly_order over the window. The kernel sums to 1.
std::vector<double> savgol_coefficients(const SavGolSpec& spec);

// Per-channel convolution with the kernel; edges are mirror-padded
// (reflection without repeating the edge sample). Output is missing wherever
// any window sample is missing. The first/last half-window is noted in
// annotations["edge_affected_samples"]. Throws NonUniformSeries.
TimeSeries savgol_filter(const TimeSeries& series, const SavGolSpec& spec);

}  // namespace behavigram
