#include "support/symm_oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdyson::testing {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Kussmaul-Martensen weights R_d for
//   integral_0^{2pi} log(4 sin^2((t_j - tau)/2)) g(tau) dtau ~ sum_k R_{|j-k|} g(t_k),
// exact for trigonometric polynomials resolved by the n-point grid (n even).
std::vector<double> log_weights(std::size_t n) {
  std::vector<double> r(n);
  for (std::size_t d = 0; d < n; ++d) {
    double acc = 0.0;
    for (std::size_t m = 1; m < n / 2; ++m)
      acc += std::cos(kTwoPi * static_cast<double>(m * d) / static_cast<double>(n)) /
             static_cast<double>(m);
    acc += (d % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(n);
    r[d] = -(2.0 * kTwoPi / static_cast<double>(n)) * acc;
  }
  return r;
}

}  // namespace

std::vector<double> lu_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
    if (std::abs(a[pivot][k]) < 1e-14)
      throw std::runtime_error("lu_solve: singular matrix");
    std::swap(a[k], a[pivot]);
    std::swap(b[k], b[pivot]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) a[i][c] -= f * a[k][c];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double acc = b[k];
    for (std::size_t c = k + 1; c < n; ++c) acc -= a[k][c] * x[c];
    x[k] = acc / a[k][k];
  }
  return x;
}

std::vector<double> neumann_jump_symm(const Contour& contour,
                                      const std::function<double(double)>& f_of_u,
                                      std::size_t n) {
  if (n % 2 != 0) throw std::invalid_argument("symm oracle: n must be even");
  const double h = kTwoPi / static_cast<double>(n);

  std::vector<Complex> x(n);
  std::vector<double> speed(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = h * static_cast<double>(j);
    x[j] = contour.spec().position(u);
    speed[j] = contour.spec().speed(u);
  }
  const auto r = log_weights(n);

  // A sigma + c = f; total charge zero. Kernel split:
  // -(1/2pi) log|x_j - x_k| = -(1/4pi) log(4 sin^2((t_j-t_k)/2))
  //                           -(1/2pi) log(|x_j - x_k| / (2 |sin((t_j-t_k)/2)|)).
  std::vector<std::vector<double>> a(n + 1, std::vector<double>(n + 1, 0.0));
  std::vector<double> rhs(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double smooth;
      if (j == k) {
        smooth = std::log(speed[j]);
      } else {
        const double half = 0.5 * h * static_cast<double>(j > k ? j - k : k - j);
        smooth = std::log(std::abs(x[j] - x[k]) / (2.0 * std::abs(std::sin(half))));
      }
      const std::size_t d = j > k ? j - k : k - j;
      a[j][k] = (-r[d] / (4.0 * std::numbers::pi) -
                 h * smooth / kTwoPi) * speed[k];
    }
    a[j][n] = 1.0;  // the additive constant c
    rhs[j] = f_of_u(h * static_cast<double>(j));
  }
  for (std::size_t k = 0; k < n; ++k) a[n][k] = speed[k] * h;  // zero total charge
  a[n][n] = 0.0;
  rhs[n] = 0.0;

  auto sol = lu_solve(std::move(a), std::move(rhs));
  sol.resize(n);
  return sol;
}

}  // namespace cdyson::testing
