#include "cdyson/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cdyson {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Enumerate log-integrand values over the index tensor, streaming them into
// a max tracker or an exp accumulator. Recursion depth is N <= 4.
template <typename Sink>
void for_each_tuple(const std::vector<std::vector<double>>& pair_log,
                    const std::vector<double>& w_term, std::size_t depth,
                    std::size_t n, double partial, std::vector<std::size_t>& idx,
                    bool fix_last, Sink&& sink) {
  const std::size_t q = w_term.size();
  if (depth == n) {
    sink(partial);
    return;
  }
  const bool last = depth + 1 == n;
  const std::size_t limit = (last && fix_last) ? 1 : q;
  for (std::size_t j = 0; j < limit; ++j) {
    double acc = partial + w_term[j];
    for (std::size_t d = 0; d < depth && acc != kNegInf; ++d) {
      const double lp = pair_log[idx[d]][j];
      acc = lp == kNegInf ? kNegInf : acc + lp;
    }
    if (acc == kNegInf) continue;  // coincidence: the integrand vanishes
    idx[depth] = j;
    for_each_tuple(pair_log, w_term, depth + 1, n, acc, idx, fix_last, sink);
  }
}

}  // namespace

double log_z_quadrature(const Contour& contour, const GasParams& p,
                        const QuadratureSettings& settings) {
  const std::size_t n = p.n_particles;
  if (n > 4)
    throw std::invalid_argument(
        "partition: tensor quadrature supports N <= 4; use log_z_morris (circle) "
        "or Monte Carlo estimators for larger N");
  const std::size_t q = settings.nodes;
  if (q < 32) throw std::invalid_argument("partition: nodes must be >= 32");
  if (settings.symmetry_reduction && !(contour.spec().is_circle() && p.potential.is_zero()))
    throw std::invalid_argument(
        "partition: symmetry reduction requires a circle with W = 0");

  const double L = contour.length();
  const double h = L / static_cast<double>(q);

  std::vector<Complex> z(q);
  std::vector<double> w_term(q, 0.0);
  for (std::size_t j = 0; j < q; ++j) {
    z[j] = contour.position_at(h * static_cast<double>(j));
    if (!p.potential.is_zero()) w_term[j] = p.beta * p.potential.value(z[j]);
  }
  // 2 beta log |z_a - z_b|; -inf marks a vanishing integrand value.
  std::vector<std::vector<double>> pair_log(q, std::vector<double>(q));
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const double d = std::abs(z[a] - z[b]);
      pair_log[a][b] = d > 0.0 ? 2.0 * p.beta * std::log(d) : kNegInf;
    }
  }

  std::vector<std::size_t> idx(n, 0);
  double max_log = kNegInf;
  for_each_tuple(pair_log, w_term, 0, n, 0.0, idx, settings.symmetry_reduction,
                 [&](double v) { max_log = std::max(max_log, v); });
  if (max_log == kNegInf)
    throw std::runtime_error("partition: integrand vanished at every node");

  double sum = 0.0;
  for_each_tuple(pair_log, w_term, 0, n, 0.0, idx, settings.symmetry_reduction,
                 [&](double v) { sum += v == kNegInf ? 0.0 : std::exp(v - max_log); });

  // Full tensor rule: (L/q)^N * sum. With the rotation-symmetry reduction the
  // last coordinate is fixed at node 0 and the factor L replaces its sum.
  double log_z = max_log + std::log(sum);
  if (settings.symmetry_reduction)
    log_z += static_cast<double>(n - 1) * std::log(h) + std::log(L);
  else
    log_z += static_cast<double>(n) * std::log(h);
  return log_z;
}

double log_z_morris(std::size_t n, double beta) {
  if (n < 1) throw std::invalid_argument("partition: N must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("partition: beta must be positive");
  const double nn = static_cast<double>(n);
  return nn * std::log(2.0 * std::numbers::pi) + std::lgamma(beta * nn + 1.0) -
         nn * std::lgamma(beta + 1.0);
}

ExpansionFit fit_expansion(std::span<const std::size_t> n_values,
                           std::span<const double> log_z, double beta,
                           bool include_tail_term) {
  if (n_values.size() != log_z.size())
    throw std::invalid_argument("fit: size mismatch");
  std::vector<std::size_t> distinct(n_values.begin(), n_values.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const std::size_t cols = include_tail_term ? 4 : 3;
  if (distinct.size() < cols || n_values.size() < cols)
    throw std::invalid_argument("fit: need at least " + std::to_string(cols) +
                                " distinct N values");

  const double n_max = static_cast<double>(
      *std::max_element(n_values.begin(), n_values.end()));
  const std::size_t rows = n_values.size();

  // F^(N) from the stated prefactor, then least squares on the scaled basis
  // {x^2, x, 1, 1/x}, x = N / N_max, via Householder QR.
  std::vector<double> rhs(rows);
  std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const double nn = static_cast<double>(n_values[i]);
    rhs[i] = log_z[i] - std::lgamma(nn + 1.0) - (beta - 1.0) * nn * std::log(nn);
    const double x = nn / n_max;
    a[i][0] = x * x;
    a[i][1] = x;
    a[i][2] = 1.0;
    if (include_tail_term) a[i][3] = 1.0 / x;
  }

  // Householder QR with implicit Q applied to rhs.
  for (std::size_t k = 0; k < cols; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < rows; ++i) norm += a[i][k] * a[i][k];
    norm = std::sqrt(norm);
    if (norm < 1e-12)
      throw std::invalid_argument("fit: ill-conditioned design (clustered N values)");
    const double alpha = a[k][k] > 0.0 ? -norm : norm;
    std::vector<double> v(rows, 0.0);
    v[k] = a[k][k] - alpha;
    for (std::size_t i = k + 1; i < rows; ++i) v[i] = a[i][k];
    double vtv = 0.0;
    for (std::size_t i = k; i < rows; ++i) vtv += v[i] * v[i];
    if (vtv == 0.0) continue;
    for (std::size_t c = k; c < cols; ++c) {
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += v[i] * a[i][c];
      const double f = 2.0 * dot / vtv;
      for (std::size_t i = k; i < rows; ++i) a[i][c] -= f * v[i];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < rows; ++i) dot += v[i] * rhs[i];
    const double f = 2.0 * dot / vtv;
    for (std::size_t i = k; i < rows; ++i) rhs[i] -= f * v[i];
  }
  std::vector<double> coef(cols);
  for (std::size_t k = cols; k-- > 0;) {
    double acc = rhs[k];
    for (std::size_t c = k + 1; c < cols; ++c) acc -= a[k][c] * coef[c];
    coef[k] = acc / a[k][k];
  }

  ExpansionFit fit;
  fit.n_values.assign(n_values.begin(), n_values.end());
  fit.f0 = coef[0] / (n_max * n_max);
  fit.f1 = coef[1] / n_max;
  fit.f2 = coef[2];
  if (include_tail_term) fit.tail_coefficient = coef[3] * n_max;

  for (std::size_t i = 0; i < rows; ++i) {
    const double nn = static_cast<double>(n_values[i]);
    double model = fit.f0 * nn * nn + fit.f1 * nn + fit.f2;
    if (include_tail_term) model += fit.tail_coefficient / nn;
    const double f_n = log_z[i] - std::lgamma(nn + 1.0) - (beta - 1.0) * nn * std::log(nn);
    fit.max_residual = std::max(fit.max_residual, std::abs(f_n - model));
  }
  return fit;
}

}  // namespace cdyson
