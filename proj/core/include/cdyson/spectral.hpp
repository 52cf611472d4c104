#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cdyson::spectral {

using Complex = std::complex<double>;

/// Unnormalized forward DFT, X_k = sum_j x_j e^{-2 pi i jk/n}.
std::vector<Complex> fft(std::span<const Complex> x);
/// Inverse DFT, normalized by 1/n.
std::vector<Complex> ifft(std::span<const Complex> x);

/// Signed mode number of FFT bin k: k for k < n/2, k - n otherwise.
int signed_mode(std::size_t k, std::size_t n);

/// Fourier coefficients c_m (FFT bin order) of real samples on the uniform
/// periodic grid theta_j = 2 pi j / n, such that f(theta) = sum_m c_m e^{i m theta}.
std::vector<Complex> coefficients(std::span<const double> values);
/// Samples on the uniform grid from FFT-order coefficients.
std::vector<double> from_coefficients(std::span<const Complex> coeffs);

double mean(std::span<const double> values);

/// Periodic Hilbert conjugate: multiplier -i sgn(m), zero mean, Nyquist dropped.
/// Maps Re h(e^{i theta}) to Im h(e^{i theta}) - Im h(0) for h holomorphic in the disk.
std::vector<double> conjugate(std::span<const double> values);

/// Spectral d/dtheta (Nyquist dropped).
std::vector<double> derivative(std::span<const double> values);

/// Dirichlet-to-Neumann multiplier |m| on the unit circle: boundary values of a
/// harmonic function in the disk to its outward radial derivative on the circle.
std::vector<double> dirichlet_to_neumann(std::span<const double> values);

/// Fraction of spectral energy (m != 0) carried by the top octave |m| >= n/4.
double tail_fraction(std::span<const double> values);

/// Truncated Fourier interpolant of real periodic samples, evaluable anywhere.
class TrigSeries {
 public:
  TrigSeries() = default;

  static TrigSeries from_values(std::span<const double> values);
  static TrigSeries from_coefficients(std::vector<Complex> coeffs);

  double operator()(double theta) const;
  double derivative_at(double theta) const;

  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Complex>& fft_coefficients() const { return coeffs_; }

 private:
  std::vector<Complex> coeffs_;  // FFT bin order
};

}  // namespace cdyson::spectral
