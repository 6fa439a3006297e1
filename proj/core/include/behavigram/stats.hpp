#pragma once

#include <span>
#include <vector>

namespace behavigram {

// Plain statistics over fully-present vectors; callers filter missing values.

double mean(std::span<const double> values);

double median(std::vector<double> values);  // by value, sorts a copy

// Linear interpolation between order statistics, p in [0, 100].
double percentile(std::vector<double> values, double p);

// Average ranks, ties share the mean rank (1-based).
std::vector<double> average_ranks(const std::vector<double>& values);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Rank correlation; NaN when either side is constant or sizes mismatch.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace behavigram
