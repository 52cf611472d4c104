#include "cdyson/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cdyson/rng.hpp"

namespace cdyson {

namespace {

double fd_step(const Contour& contour) {
  return std::cbrt(std::numeric_limits<double>::epsilon()) * contour.length();
}

std::vector<double> drift_at_nodes(const Contour& contour, const GasParams& p, std::size_t n) {
  // Single particle: dE/ds reduces to the tangential derivative of W.
  std::vector<double> a(n);
  const double h = contour.length() / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j)
    a[j] = p.potential.tangential(contour.frame_at(h * static_cast<double>(j)));
  return a;
}

}  // namespace

GridFunction GridFunction::callable(Value v) {
  GridFunction f;
  f.value_ = std::move(v);
  return f;
}

GridFunction GridFunction::callable(Value v, Partial d1, Partial d2) {
  GridFunction f;
  f.value_ = std::move(v);
  f.d1_ = std::move(d1);
  f.d2_ = std::move(d2);
  return f;
}

GridFunction GridFunction::grid1d(std::shared_ptr<const Contour> contour,
                                  std::vector<double> values) {
  if (!contour) throw std::invalid_argument("grid function: null contour");
  if (values.size() < 8) throw std::invalid_argument("grid function: too few nodes");
  GridFunction f;
  f.contour_ = std::move(contour);
  f.values_ = std::move(values);
  return f;
}

double GridFunction::value(const Configuration& cfg) const {
  if (is_grid()) {
    if (cfg.size() != 1)
      throw std::invalid_argument("grid function: grid mode is single-particle");
    // Linear interpolation between nodes; grid densities are consumed at nodes.
    const double L = contour_->length();
    const std::size_t n = values_.size();
    const double x = cfg.positions()[0] / L * static_cast<double>(n);
    const std::size_t j = std::min(static_cast<std::size_t>(x), n - 1);
    const double w = x - static_cast<double>(j);
    return (1.0 - w) * values_[j] + w * values_[(j + 1) % n];
  }
  return value_(cfg);
}

double GridFunction::d1(const Configuration& cfg, std::size_t i) const {
  if (d1_) return d1_(cfg, i);
  const double h = fd_step(cfg.contour());
  return (value(cfg.displaced(i, h)) - value(cfg.displaced(i, -h))) / (2.0 * h);
}

double GridFunction::d2(const Configuration& cfg, std::size_t i) const {
  if (d2_) return d2_(cfg, i);
  const double h = fd_step(cfg.contour());
  return (value(cfg.displaced(i, h)) - 2.0 * value(cfg) + value(cfg.displaced(i, -h))) /
         (h * h);
}

double apply_generator(const GridFunction& f, const GasParams& p, const Configuration& cfg) {
  const auto grad = drift(cfg, p);
  double acc = 0.0;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    acc += 0.5 * p.kappa * f.d2(cfg, i) + grad[i] * f.d1(cfg, i);
  return acc;
}

double apply_adjoint(const GridFunction& density, const GasParams& p,
                     const Configuration& cfg) {
  const auto grad = drift(cfg, p);
  const auto grad2 = drift_second(cfg, p);
  const double value = density.value(cfg);
  double acc = 0.0;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    acc += 0.5 * p.kappa * density.d2(cfg, i) - grad[i] * density.d1(cfg, i) -
           grad2[i] * value;
  return acc;
}

double apply_hamiltonian(const GridFunction& f, const GasParams& p,
                         const Configuration& cfg) {
  const auto grad = drift(cfg, p);
  const auto grad2 = drift_second(cfg, p);
  const double value = f.value(cfg);
  double acc = 0.0;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    acc += 0.5 * (p.kappa * f.d2(cfg, i) -
                  (grad[i] * grad[i] / p.kappa + grad2[i]) * value);
  return acc;
}

Fp1dOperator::Fp1dOperator(const Contour& contour, const GasParams& p,
                           std::size_t grid_size)
    : kappa_(p.kappa),
      spacing_(contour.length() / static_cast<double>(grid_size)),
      drift_(drift_at_nodes(contour, p, grid_size)) {}

std::vector<double> Fp1dOperator::generator(std::span<const double> f) const {
  const std::size_t n = drift_.size();
  if (f.size() != n) throw std::invalid_argument("fp1d: grid size mismatch");
  const double h = spacing_;
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jp = (j + 1) % n, jm = (j + n - 1) % n;
    out[j] = 0.5 * kappa_ * (f[jp] - 2.0 * f[j] + f[jm]) / (h * h) +
             drift_[j] * (f[jp] - f[jm]) / (2.0 * h);
  }
  return out;
}

std::vector<double> Fp1dOperator::adjoint(std::span<const double> density) const {
  const std::size_t n = drift_.size();
  if (density.size() != n) throw std::invalid_argument("fp1d: grid size mismatch");
  const double h = spacing_;
  std::vector<double> out(n);
  // (kappa/2) D2 P - Dc(a P): divergence form, exact transpose of the generator.
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jp = (j + 1) % n, jm = (j + n - 1) % n;
    out[j] = 0.5 * kappa_ * (density[jp] - 2.0 * density[j] + density[jm]) / (h * h) -
             (drift_[jp] * density[jp] - drift_[jm] * density[jm]) / (2.0 * h);
  }
  return out;
}

double Fp1dOperator::stable_dt() const {
  double a_max = 0.0;
  for (double v : drift_) a_max = std::max(a_max, std::abs(v));
  return 1.0 / (kappa_ / (spacing_ * spacing_) + a_max / spacing_);
}

std::vector<double> generator_grid1d(const Contour& contour, const GasParams& p,
                                     std::span<const double> f) {
  return Fp1dOperator(contour, p, f.size()).generator(f);
}

std::vector<double> adjoint_grid1d(const Contour& contour, const GasParams& p,
                                   std::span<const double> density) {
  return Fp1dOperator(contour, p, density.size()).adjoint(density);
}

std::vector<double> stationary_grid1d(const Contour& contour, const GasParams& p,
                                      std::size_t grid_size) {
  const std::size_t n = grid_size;
  const double h = contour.length() / static_cast<double>(n);
  const auto a = drift_at_nodes(contour, p, n);
  const double d = 0.5 * p.kappa / h;

  // Constant-flux recursion: pi_{j+1} (d - a_{j+1}/2) = pi_j (d + a_j/2) + G.
  // Solve with pi_0 = 1 and the flux G fixed by periodic closure.
  std::vector<double> base(n + 1), part(n + 1);
  base[0] = 1.0;
  part[0] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jp = (j + 1) % n;
    const double denom = d - 0.5 * a[jp];
    const double num = d + 0.5 * a[j];
    base[j + 1] = base[j] * num / denom;
    part[j + 1] = (part[j] * num + 1.0) / denom;
  }
  // Periodic closure pi_n == pi_0 fixes the flux.
  const double flux = part[n] != 0.0 ? (1.0 - base[n]) / part[n] : 0.0;
  std::vector<double> pi(n);
  for (std::size_t j = 0; j < n; ++j) pi[j] = base[j] + flux * part[j];

  double mass = 0.0;
  for (double v : pi) mass += v * h;
  for (double& v : pi) v /= mass;
  return pi;
}

GridFunction fp1d_evolve(const GasParams& p, const std::shared_ptr<const Contour>& contour,
                         const Fp1dSettings& settings) {
  if (p.n_particles != 1)
    throw std::invalid_argument("fp1d: the PDE evolution is single-particle (N = 1)");
  const std::size_t n = settings.grid_size;
  if (n < 16) throw std::invalid_argument("fp1d: grid_size too small");
  const double L = contour->length();
  const double h = L / static_cast<double>(n);
  const Fp1dOperator op(*contour, p, n);
  double a_max = 0.0;
  for (double v : op.node_drift()) a_max = std::max(a_max, std::abs(v));

  const double dt_limit = op.stable_dt();
  double dt = settings.dt;
  if (dt == 0.0) dt = 0.45 * dt_limit;
  if (dt > dt_limit)
    throw std::invalid_argument("fp1d: dt violates the stability limit; use dt <= " +
                                std::to_string(dt_limit));
  if (a_max * h > p.kappa)
    throw std::invalid_argument("fp1d: grid too coarse for this drift; increase grid_size");

  std::vector<double> density(n, 1.0 / L);
  const auto steps = static_cast<std::uint64_t>(std::ceil(settings.t_end / dt));
  std::vector<double> rhs;
  for (std::uint64_t k = 0; k < steps; ++k) {
    rhs = op.adjoint(density);
    for (std::size_t j = 0; j < n; ++j) density[j] += dt * rhs[j];
  }

  double mass = 0.0;
  for (double v : density) mass += v * h;
  for (double& v : density) v /= mass;
  return GridFunction::grid1d(contour, std::move(density));
}

GridFunction boltzmann_density(const GasParams& p, double e_ref) {
  // Shifting E by the constant e_ref rescales the density; A* is linear, so
  // the zero mode property is unaffected while values stay in floating range.
  const double beta = p.beta;
  Potential w = p.potential;
  return GridFunction::callable(
      [beta, w, e_ref](const Configuration& cfg) {
        GasParams local(cfg.size(), beta, w);
        return std::exp(beta * (energy(cfg, local) - e_ref));
      },
      [beta, w, e_ref](const Configuration& cfg, std::size_t i) {
        GasParams local(cfg.size(), beta, w);
        const double v = std::exp(beta * (energy(cfg, local) - e_ref));
        return beta * drift(cfg, local)[i] * v;
      },
      [beta, w, e_ref](const Configuration& cfg, std::size_t i) {
        GasParams local(cfg.size(), beta, w);
        const double v = std::exp(beta * (energy(cfg, local) - e_ref));
        const double d1 = drift(cfg, local)[i];
        const double d2 = drift_second(cfg, local)[i];
        return (beta * d2 + beta * beta * d1 * d1) * v;
      });
}

OperatorReport zero_mode_report(const std::shared_ptr<const Contour>& contour,
                                const GasParams& p, std::size_t n_configs,
                                std::uint64_t seed) {
  OperatorReport report;
  report.operator_tag = "adjoint";
  report.configurations = n_configs;
  RngStream rng(seed);
  const double L = contour->length();
  const std::size_t n = p.n_particles;

  for (std::size_t c = 0; c < n_configs; ++c) {
    // Rejection-sample a configuration with comfortable minimum spacing.
    std::vector<double> s(n);
    for (int attempt = 0;; ++attempt) {
      for (auto& v : s) v = rng.uniform() * L;
      std::vector<double> sorted = s;
      std::sort(sorted.begin(), sorted.end());
      double gap = L - sorted.back() + sorted.front();
      for (std::size_t i = 1; i < n; ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
      if (n == 1 || gap > 0.05 * L / static_cast<double>(n)) break;
      if (attempt > 10000) throw std::runtime_error("zero mode: sampling failed");
    }
    Configuration cfg(contour, s);

    const auto grad = drift(cfg, p);
    const auto grad2 = drift_second(cfg, p);
    // Work with P0 scaled to 1 at cfg: terms of A* P0 relative to P0(cfg).
    double t_diff = 0.0, t_drift = 0.0, t_source = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      t_diff += 0.5 * p.kappa * (p.beta * grad2[i] + p.beta * p.beta * grad[i] * grad[i]);
      t_drift += -grad[i] * p.beta * grad[i];
      t_source += -grad2[i];
    }
    const double residual = std::abs(t_diff + t_drift + t_source);
    const double scale =
        std::max({std::abs(t_diff), std::abs(t_drift), std::abs(t_source), 1.0});
    report.residuals.push_back(residual / scale);
    report.max_residual = std::max(report.max_residual, residual / scale);
  }
  return report;
}

}  // namespace cdyson
