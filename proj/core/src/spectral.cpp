#include "cdyson/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace cdyson::spectral {

namespace {

// The FFTW planner is not thread-safe; execution of a plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> run_dft(std::span<const Complex> x, int sign) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("spectral: empty input");
  std::vector<Complex> in(x.begin(), x.end());
  std::vector<Complex> out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n),
                            reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

template <typename Fn>
std::vector<double> apply_multiplier(std::span<const double> values, Fn&& factor) {
  const std::size_t n = values.size();
  auto c = coefficients(values);
  for (std::size_t k = 0; k < n; ++k) c[k] *= factor(signed_mode(k, n), n);
  return from_coefficients(c);
}

}  // namespace

std::vector<Complex> fft(std::span<const Complex> x) { return run_dft(x, FFTW_FORWARD); }

std::vector<Complex> ifft(std::span<const Complex> x) {
  auto out = run_dft(x, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(x.size());
  for (auto& v : out) v *= inv;
  return out;
}

int signed_mode(std::size_t k, std::size_t n) {
  return k < (n + 1) / 2 ? static_cast<int>(k)
                         : static_cast<int>(k) - static_cast<int>(n);
}

std::vector<Complex> coefficients(std::span<const double> values) {
  std::vector<Complex> x(values.begin(), values.end());
  auto c = fft(x);
  const double inv = 1.0 / static_cast<double>(values.size());
  for (auto& v : c) v *= inv;
  return c;
}

std::vector<double> from_coefficients(std::span<const Complex> coeffs) {
  auto x = run_dft(coeffs, FFTW_BACKWARD);  // sum_k c_k e^{+2 pi i jk/n}
  std::vector<double> out(coeffs.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = x[j].real();
  return out;
}

double mean(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

std::vector<double> conjugate(std::span<const double> values) {
  return apply_multiplier(values, [](int m, std::size_t n) -> Complex {
    if (m == 0 || 2 * static_cast<std::size_t>(-m) == n) return 0.0;
    return Complex(0.0, m > 0 ? -1.0 : 1.0);
  });
}

std::vector<double> derivative(std::span<const double> values) {
  return apply_multiplier(values, [](int m, std::size_t n) -> Complex {
    if (2 * static_cast<std::size_t>(m < 0 ? -m : m) == n) return 0.0;
    return Complex(0.0, static_cast<double>(m));
  });
}

std::vector<double> dirichlet_to_neumann(std::span<const double> values) {
  return apply_multiplier(values, [](int m, std::size_t) -> Complex {
    return static_cast<double>(m < 0 ? -m : m);
  });
}

double tail_fraction(std::span<const double> values) {
  const std::size_t n = values.size();
  auto c = coefficients(values);
  double total = 0.0, tail = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const int m = signed_mode(k, n);
    if (m == 0) continue;
    const double e = std::norm(c[k]);
    total += e;
    if (static_cast<std::size_t>(m < 0 ? -m : m) * 4 >= n) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

TrigSeries TrigSeries::from_values(std::span<const double> values) {
  TrigSeries s;
  s.coeffs_ = coefficients(values);
  return s;
}

TrigSeries TrigSeries::from_coefficients(std::vector<Complex> coeffs) {
  TrigSeries s;
  s.coeffs_ = std::move(coeffs);
  return s;
}

double TrigSeries::operator()(double theta) const {
  const std::size_t n = coeffs_.size();
  double acc = coeffs_[0].real();
  // Real samples: pair (m, -m) and keep the real part explicitly.
  for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
    const double m = static_cast<double>(k);
    acc += 2.0 * (coeffs_[k] * std::polar(1.0, m * theta)).real();
  }
  if (n % 2 == 0 && n >= 2) {
    const double m = -0.5 * static_cast<double>(n);
    acc += (coeffs_[n / 2] * std::polar(1.0, m * theta)).real();
  }
  return acc;
}

double TrigSeries::derivative_at(double theta) const {
  const std::size_t n = coeffs_.size();
  double acc = 0.0;
  for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
    const double m = static_cast<double>(k);
    acc += 2.0 * (Complex(0.0, m) * coeffs_[k] * std::polar(1.0, m * theta)).real();
  }
  // Nyquist derivative dropped, as in the grid operators.
  return acc;
}

}  // namespace cdyson::spectral
