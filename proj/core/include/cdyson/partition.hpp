#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cdyson/gas.hpp"

namespace cdyson {

struct QuadratureSettings {
  std::size_t nodes = 512;          // per dimension, >= 32
  bool symmetry_reduction = false;  // circle + rotation-invariant W only:
                                    // fix particle N at node 0, multiply by L
};

/// log Z_N by tensor trapezoidal quadrature on the arclength grid, N <= 4.
/// The integrand is assembled in log space; coincident nodes contribute
/// exactly zero (the weight |z_i - z_j|^{2 beta} vanishes there).
double log_z_quadrature(const Contour& contour, const GasParams& p,
                        const QuadratureSettings& settings);

/// Exact log Z_N of the unit-circle gas with W = 0:
/// N log 2pi + log Gamma(beta N + 1) - N log Gamma(beta + 1).
double log_z_morris(std::size_t n, double beta);

struct ExpansionFit {
  std::vector<std::size_t> n_values;
  double f0 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double tail_coefficient = 0.0;  // fitted 1/N coefficient (when enabled)
  double max_residual = 0.0;
};

/// Extract (F0, F1, F2) from a log Z_N sequence: F^(N) = log Z_N - log N! -
/// (beta - 1) N log N, least-squares fit of N^2, N, 1 (and optionally 1/N).
ExpansionFit fit_expansion(std::span<const std::size_t> n_values,
                           std::span<const double> log_z, double beta,
                           bool include_tail_term = true);

}  // namespace cdyson
