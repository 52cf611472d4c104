#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cdyson/gas.hpp"

namespace cdyson {

/// A function of N contour positions with tangential derivatives: either a
/// callable with analytic first/second tangential partials, a callable whose
/// partials are taken by central differences (step h = eps^{1/3} L), or
/// node values on a uniform periodic 1-d grid.
class GridFunction {
 public:
  using Value = std::function<double(const Configuration&)>;
  using Partial = std::function<double(const Configuration&, std::size_t)>;

  static GridFunction callable(Value v);
  static GridFunction callable(Value v, Partial d1, Partial d2);
  static GridFunction grid1d(std::shared_ptr<const Contour> contour,
                             std::vector<double> values);

  bool is_grid() const { return !values_.empty(); }
  const std::vector<double>& values() const { return values_; }
  const std::shared_ptr<const Contour>& grid_contour() const { return contour_; }

  double value(const Configuration& cfg) const;
  double d1(const Configuration& cfg, std::size_t i) const;
  double d2(const Configuration& cfg, std::size_t i) const;

 private:
  Value value_;
  Partial d1_, d2_;
  std::shared_ptr<const Contour> contour_;  // grid mode only
  std::vector<double> values_;              // grid mode only
};

/// (A f)(cfg) = sum_i [ (kappa/2) d2_i f + (d E/ds_i) d1_i f ].
double apply_generator(const GridFunction& f, const GasParams& p, const Configuration& cfg);

/// RHS of the Fokker-Planck equation at cfg:
/// sum_i [ (kappa/2) d2_i P - (dE/ds_i) d1_i P - (d^2 E/ds_i^2) P ].
double apply_adjoint(const GridFunction& density, const GasParams& p, const Configuration& cfg);

/// (H f)(cfg) = (1/2) sum_i [ kappa d2_i f - ((dE/ds_i)^2 / kappa + d^2E/ds_i^2) f ].
double apply_hamiltonian(const GridFunction& f, const GasParams& p, const Configuration& cfg);

/// Single-particle discrete operators on the uniform periodic grid. Drift is
/// evaluated once at the nodes; the adjoint is the exact discrete transpose
/// of the generator and is in conservative (divergence) form.
class Fp1dOperator {
 public:
  Fp1dOperator(const Contour& contour, const GasParams& p, std::size_t grid_size);

  std::size_t grid_size() const { return drift_.size(); }
  double spacing() const { return spacing_; }
  const std::vector<double>& node_drift() const { return drift_; }

  /// A f = (kappa/2) f'' + a f' (central differences).
  std::vector<double> generator(std::span<const double> f) const;
  /// A* P = (kappa/2) P'' - (a P)' (divergence form, mass conserving).
  std::vector<double> adjoint(std::span<const double> density) const;

  /// Largest explicit-Euler step: 1 / (kappa/h^2 + max|a|/h).
  double stable_dt() const;

 private:
  double kappa_ = 1.0;
  double spacing_ = 0.0;
  std::vector<double> drift_;
};

/// One-shot conveniences over Fp1dOperator.
std::vector<double> generator_grid1d(const Contour& contour, const GasParams& p,
                                     std::span<const double> f);
std::vector<double> adjoint_grid1d(const Contour& contour, const GasParams& p,
                                   std::span<const double> density);

/// Stationary density of the discrete scheme (constant-flux solution of the
/// periodic three-term recursion), normalized to unit mass.
std::vector<double> stationary_grid1d(const Contour& contour, const GasParams& p,
                                      std::size_t grid_size);

struct Fp1dSettings {
  std::size_t grid_size = 512;
  double dt = 0.0;     // 0 selects the stability limit with a 0.45 safety factor
  double t_end = 40.0;
};

/// Explicit conservative evolution of the single-particle Fokker-Planck PDE
/// from the uniform density; returns the final density, unit mass.
/// Rejects dt above the stability limit with a recommended value.
GridFunction fp1d_evolve(const GasParams& p, const std::shared_ptr<const Contour>& contour,
                         const Fp1dSettings& settings);

struct OperatorReport {
  std::string operator_tag;           // generator | adjoint | hamiltonian
  std::vector<double> residuals;      // nonnegative
  std::size_t configurations = 0;
  double max_residual = 0.0;
};

/// Residuals of A* P0 at random configurations, scaled by the magnitude of
/// the individual operator terms (the stationarity check).
OperatorReport zero_mode_report(const std::shared_ptr<const Contour>& contour,
                                const GasParams& p, std::size_t n_configs,
                                std::uint64_t seed);

/// Callable form of the stationary density exp(beta (E - E_ref)) with
/// analytic tangential derivatives; E_ref keeps values in floating range.
GridFunction boltzmann_density(const GasParams& p, double e_ref);

}  // namespace cdyson
