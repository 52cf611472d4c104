#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cdyson {

/// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
double ks_distance(std::span<const double> a, std::span<const double> b);

/// Sorted circular gaps between arclength positions on a contour of length L.
std::vector<double> circular_gaps(std::span<const double> s, double length);

/// Integrated autocorrelation time of a scalar series with Sokal's adaptive
/// window (cutoff at lag >= 6 tau). At least 1/2 by convention.
double integrated_autocorrelation_time(std::span<const double> series);

double sample_mean(std::span<const double> values);
double sample_variance(std::span<const double> values);

/// Pearson chi-square statistic of observed counts against expected counts.
double chi_square_statistic(std::span<const std::size_t> observed,
                            std::span<const double> expected);

/// 95th percentile of the chi-square distribution with 31 degrees of freedom
/// (32-bin goodness-of-fit tests).
inline constexpr double kChiSquare95Df31 = 44.985343;

}  // namespace cdyson
