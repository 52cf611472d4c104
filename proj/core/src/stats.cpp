#include "cdyson/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdyson {

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  while (i < sa.size() && j < sb.size()) {
    // Consume ties from both sides before measuring, so equal samples give 0.
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<double> circular_gaps(std::span<const double> s, double length) {
  std::vector<double> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> gaps(sorted.size());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) gaps[i] = sorted[i + 1] - sorted[i];
  if (!sorted.empty()) gaps.back() = length - sorted.back() + sorted.front();
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

double sample_mean(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  const double mu = sample_mean(values);
  double s = 0.0;
  for (double v : values) s += (v - mu) * (v - mu);
  return s / static_cast<double>(values.size() - 1);
}

double integrated_autocorrelation_time(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 4) return 0.5;
  const double mu = sample_mean(series);
  const double c0 = [&] {
    double s = 0.0;
    for (double v : series) s += (v - mu) * (v - mu);
    return s / static_cast<double>(n);
  }();
  if (c0 == 0.0) return 0.5;

  double tau = 0.5;
  for (std::size_t lag = 1; lag < n / 2; ++lag) {
    double c = 0.0;
    for (std::size_t k = 0; k + lag < n; ++k)
      c += (series[k] - mu) * (series[k + lag] - mu);
    c /= static_cast<double>(n - lag) * c0;
    tau += c;
    if (static_cast<double>(lag) >= 6.0 * tau) break;
  }
  return std::max(tau, 0.5);
}

double chi_square_statistic(std::span<const std::size_t> observed,
                            std::span<const double> expected) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi2: size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw std::invalid_argument("chi2: nonpositive expected count");
    const double d = static_cast<double>(observed[i]) - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

}  // namespace cdyson
